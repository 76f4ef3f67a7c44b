#include "fuzzsense/config.hpp"

#include <charconv>
#include <cstdio>

namespace fuzzsense::orchestrator {

std::string IterationId::str() const {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%d-%d-%d", campaign, scenario_index, sensor_index);
    return buf;
}

IterationId IterationId::parse(const std::string& s) {
    IterationId id;
    const char* p = s.data();
    const char* end = s.data() + s.size();
    auto r1 = std::from_chars(p, end, id.campaign);
    if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != '-') {
        throw ConfigError("bad iteration id: " + s);
    }
    auto r2 = std::from_chars(r1.ptr + 1, end, id.scenario_index);
    if (r2.ec != std::errc() || r2.ptr == end || *r2.ptr != '-') {
        throw ConfigError("bad iteration id: " + s);
    }
    auto r3 = std::from_chars(r2.ptr + 1, end, id.sensor_index);
    if (r3.ec != std::errc() || r3.ptr != end) {
        throw ConfigError("bad iteration id: " + s);
    }
    return id;
}

ValidationResult validate_config(const CampaignConfig& config) {
    ValidationResult result;
    const SensorMeta meta{config.target_stream, StreamKind::lidar, config.lidar.max_range};

    ValidationResult seed = validate_params(config.sensor_seed, meta);
    for (auto& v : seed.violations) result.violations.push_back("sensor_seed: " + v);

    ValidationResult scenario = worldsim::validate_scenario(config.scenario_seed);
    for (auto& v : scenario.violations) result.violations.push_back("scenario_seed: " + v);

    for (const auto& axis : config.sensor_grid) {
        if (axis.values.empty()) {
            result.violations.push_back("sensor_grid axis '" + axis.name + "' is empty");
            continue;
        }
        for (const double value : axis.values) {
            SensorFuzzParams p;
            try {
                p = mutator::apply_sensor_axis(config.sensor_seed, axis.name, value);
            } catch (const mutator::ParameterError& e) {
                result.violations.push_back(e.what());
                break;
            }
            ValidationResult pv = validate_params(p, meta);
            for (auto& v : pv.violations) {
                result.violations.push_back("sensor_grid axis '" + axis.name + "': " + v);
            }
        }
    }
    for (const auto& axis : config.scenario_grid) {
        if (axis.values.empty()) {
            result.violations.push_back("scenario_grid axis '" + axis.name + "' is empty");
        }
    }
    if (config.transport != "inproc" && config.transport != "socket") {
        result.violations.push_back("transport must be 'inproc' or 'socket'");
    }
    if (config.plane.cell_size <= 0) result.violations.push_back("plane cell_size must be > 0");
    return result;
}

std::string mask_digest(const FuzzingMask& mask) {
    // FNV-1a over the coordinate stream
    std::uint64_t hash = 14695981039346656037ull;
    auto mix = [&hash](std::uint64_t v) {
        for (int byte = 0; byte < 8; ++byte) {
            hash ^= (v >> (8 * byte)) & 0xff;
            hash *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(mask.width));
    mix(static_cast<std::uint64_t>(mask.height));
    for (const auto& [x, y] : mask.coords) {
        mix(static_cast<std::uint64_t>(x));
        mix(static_cast<std::uint64_t>(y));
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::uint64_t derive_seed(std::uint64_t master_seed, int scenario_index, int sensor_index) {
    // splitmix64 over the combined indices
    std::uint64_t z = master_seed;
    z += 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(scenario_index) + 1);
    z += 0xbf58476d1ce4e5b9ull * (static_cast<std::uint64_t>(sensor_index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace fuzzsense::orchestrator
