#include "fuzzsense/mutator.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace fuzzsense::mutator {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string canonical_key(const SensorFuzzParams& p) {
    std::ostringstream os;
    os << fmt(p.change_ratio) << '|' << fmt(p.dispersion) << '|' << fmt(p.center_x) << '|'
       << fmt(p.center_y) << '|' << p.mask_width << '|' << p.mask_height << '|'
       << fmt(p.intensity) << '|' << fmt(p.distance) << '|' << p.stream_id;
    return os.str();
}

std::string canonical_key(const ScenarioParams& s) {
    std::ostringstream os;
    os << s.route_id << '|' << fmt(s.goal_x) << '|' << fmt(s.goal_y) << '|'
       << fmt(s.target_speed) << '|' << s.rng_seed;
    for (const auto& o : s.static_obstacles) {
        os << '|' << fmt(o.x) << ',' << fmt(o.y) << ',' << fmt(o.width) << ',' << fmt(o.length);
    }
    return os.str();
}

// Advances a mixed-radix counter; returns false on wraparound (exhausted).
bool advance(std::vector<std::size_t>& index, const GridSpec& grid) {
    for (std::size_t axis = grid.size(); axis-- > 0;) {
        if (++index[axis] < grid[axis].values.size()) return true;
        index[axis] = 0;
    }
    return false;
}

void check_grid(const GridSpec& grid) {
    for (const auto& axis : grid) {
        if (axis.values.empty()) throw ParameterError("empty grid axis: " + axis.name);
    }
}

}  // namespace

SensorFuzzParams apply_sensor_axis(SensorFuzzParams p, const std::string& name, double value) {
    if (name == "change_ratio") p.change_ratio = value;
    else if (name == "dispersion") p.dispersion = value;
    else if (name == "center_x") p.center_x = value;
    else if (name == "center_y") p.center_y = value;
    else if (name == "intensity") p.intensity = value;
    else if (name == "distance") p.distance = value;
    else if (name == "mask_width") p.mask_width = static_cast<int>(value);
    else if (name == "mask_height") p.mask_height = static_cast<int>(value);
    else throw ParameterError("unknown sensor axis: " + name);
    return p;
}

ScenarioParams apply_scenario_axis(ScenarioParams s, const std::string& name, double value) {
    if (name == "target_speed") {
        s.target_speed = value;
        return s;
    }
    if (name == "goal_x") {
        s.goal_x = value;
        return s;
    }
    if (name == "goal_y") {
        s.goal_y = value;
        return s;
    }
    if (name.starts_with("obstacle")) {
        const auto underscore = name.rfind('_');
        std::size_t idx = 0;
        const char* first = name.data() + 8;
        const char* last = name.data() + underscore;
        auto [ptr, ec] = std::from_chars(first, last, idx);
        if (ec == std::errc() && ptr == last && idx < s.static_obstacles.size()) {
            const std::string coord = name.substr(underscore + 1);
            if (coord == "x") {
                s.static_obstacles[idx].x = value;
                return s;
            }
            if (coord == "y") {
                s.static_obstacles[idx].y = value;
                return s;
            }
        }
    }
    throw ParameterError("unknown scenario axis: " + name);
}

SensorCursor::SensorCursor(SensorFuzzParams seed, GridSpec grid, SensorMeta meta)
    : seed_(std::move(seed)), grid_(std::move(grid)), meta_(std::move(meta)),
      index_(grid_.size(), 0) {
    check_grid(grid_);
    emitted_.insert(canonical_key(seed_));
    done_ = grid_.empty();
}

std::optional<SensorFuzzParams> SensorCursor::next() {
    while (!done_) {
        SensorFuzzParams candidate = seed_;
        for (std::size_t axis = 0; axis < grid_.size(); ++axis) {
            candidate = apply_sensor_axis(candidate, grid_[axis].name,
                                          grid_[axis].values[index_[axis]]);
        }
        if (!advance(index_, grid_)) done_ = true;

        if (!validate_params(candidate, meta_).ok()) continue;
        auto [it, inserted] = emitted_.insert(canonical_key(candidate));
        if (inserted) return candidate;
    }
    return std::nullopt;
}

std::pair<SensorFuzzParams, SensorCursor> init_from_seed(const SensorFuzzParams& seed,
                                                         GridSpec grid, SensorMeta meta) {
    ValidationResult v = validate_params(seed, meta);
    if (!v.ok()) throw ParameterError("invalid seed: " + v.violations.front());
    return {seed, SensorCursor(seed, std::move(grid), std::move(meta))};
}

ScenarioCursor::ScenarioCursor(ScenarioParams seed, GridSpec grid, Validator valid)
    : seed_(std::move(seed)), grid_(std::move(grid)), valid_(std::move(valid)),
      index_(grid_.size(), 0) {
    check_grid(grid_);
    done_ = grid_.empty();
}

std::optional<ScenarioParams> ScenarioCursor::next() {
    if (seed_pending_) {
        seed_pending_ = false;
        if (!valid_ || valid_(seed_)) {
            emitted_.insert(canonical_key(seed_));
            return seed_;
        }
    }
    while (!done_) {
        ScenarioParams candidate = seed_;
        for (std::size_t axis = 0; axis < grid_.size(); ++axis) {
            candidate = apply_scenario_axis(candidate, grid_[axis].name,
                                            grid_[axis].values[index_[axis]]);
        }
        if (!advance(index_, grid_)) done_ = true;

        if (valid_ && !valid_(candidate)) continue;
        auto [it, inserted] = emitted_.insert(canonical_key(candidate));
        if (inserted) return candidate;
    }
    return std::nullopt;
}

}  // namespace fuzzsense::mutator
