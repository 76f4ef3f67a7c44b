#ifndef FUZZSENSE_MUTATOR_HPP
#define FUZZSENSE_MUTATOR_HPP

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzsense/core.hpp"

namespace fuzzsense::mutator {

struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One grid axis: a parameter name and its ordered finite value list.
struct GridAxis {
    std::string name;
    std::vector<double> values;
};

using GridSpec = std::vector<GridAxis>;

/// Recognized sensor axis names: change_ratio, dispersion, center_x, center_y,
/// intensity, distance, mask_width, mask_height.
SensorFuzzParams apply_sensor_axis(SensorFuzzParams p, const std::string& name, double value);

/// Recognized scenario axis names: target_speed, goal_x, goal_y,
/// obstacle<i>_x, obstacle<i>_y (index into static_obstacles).
ScenarioParams apply_scenario_axis(ScenarioParams s, const std::string& name, double value);

/// Brute-force grid enumeration over sensor fuzzing parameters. The seed is
/// emitted first, untouched; subsequent calls walk the grid in lexicographic
/// axis-declaration order, skipping vectors already emitted or invalid.
class SensorCursor {
public:
    SensorCursor(SensorFuzzParams seed, GridSpec grid, SensorMeta meta);

    /// Next not-yet-emitted grid point, or nullopt when exhausted.
    std::optional<SensorFuzzParams> next();

    std::size_t emitted_count() const { return emitted_.size(); }

private:
    SensorFuzzParams seed_;
    GridSpec grid_;
    SensorMeta meta_;
    std::vector<std::size_t> index_;  // mixed-radix counter
    bool done_{false};
    std::set<std::string> emitted_;
};

/// Seed passthrough: validates the seed, returns it as the first parameter
/// vector, and a cursor with the seed already marked emitted.
std::pair<SensorFuzzParams, SensorCursor> init_from_seed(const SensorFuzzParams& seed,
                                                         GridSpec grid, SensorMeta meta);

/// Grid enumeration over scenario parameters; invalid grid points (per the
/// supplied predicate) are skipped, so the emitted count can be below the
/// grid size.
class ScenarioCursor {
public:
    using Validator = std::function<bool(const ScenarioParams&)>;

    ScenarioCursor(ScenarioParams seed, GridSpec grid, Validator valid);

    std::optional<ScenarioParams> next();

    std::size_t emitted_count() const { return emitted_.size(); }

private:
    ScenarioParams seed_;
    GridSpec grid_;
    Validator valid_;
    std::vector<std::size_t> index_;
    bool seed_pending_{true};
    bool done_{false};
    std::set<std::string> emitted_;
};

}  // namespace fuzzsense::mutator

#endif
