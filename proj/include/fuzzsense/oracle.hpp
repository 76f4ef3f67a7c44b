#ifndef FUZZSENSE_ORACLE_HPP
#define FUZZSENSE_ORACLE_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "fuzzsense/core.hpp"

namespace fuzzsense::oracle {

struct ScenarioInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InfrastructureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unfuzzed ground-truth execution of a scenario.
struct GoldenRun {
    ScenarioParams scenario;
    std::vector<TrajectoryRecord> trajectory;
    double duration_sec{0};
    bool goal_reached{false};
};

struct OracleThresholds {
    double eps_lateral{0.5};          // meters
    double speed_ratio_min{0.8};      // fraction
    double sustain_sec{1.0};          // seconds
    double immobility_speed{0.1};     // m/s
    double immobility_sec{3.0};       // seconds
    double timeout_multiplier{3.0};   // x golden-run duration
};

struct DeviationMetrics {
    double max_lateral{0};        // meters, nearest-pose matching by arc length
    double min_speed_ratio{1};    // min over sustain windows of the in-window max
    double immobile_sec{0};       // longest span below immobility_speed
    bool goal_reached{false};
    double completion_ratio{0};   // observed duration / golden duration
};

/// Simulator-side events passed through to findings.
struct RunEvents {
    bool collision{false};
    bool timeout{false};
};

/// Outcome of one full scenario run, fuzzed or not.
struct RunResult {
    std::vector<TrajectoryRecord> trajectory;
    bool goal_reached{false};
    RunEvents events;
};

/// Executes one unfuzzed run via the supplied runner and gates on success.
/// Throws ScenarioInvalid when the unfuzzed run does not reach the goal.
GoldenRun create_golden_run(const ScenarioParams& scenario,
                            const std::function<RunResult(const ScenarioParams&)>& run_unfuzzed);

/// Compares an observed trajectory against the golden run. Lateral deviation
/// uses arc-length projection onto the golden path, not timestamp pairing.
DeviationMetrics compute_metrics(const GoldenRun& golden,
                                 const std::vector<TrajectoryRecord>& observed,
                                 bool goal_reached, double sustain_sec = 1.0,
                                 double immobility_speed = 0.1);

struct FindingContext {
    SensorFuzzParams sensor_params;
    ScenarioParams scenario_params;
    std::string iteration_id;
};

/// Applies the threshold predicates; an empty list means no finding.
std::vector<Finding> evaluate(const DeviationMetrics& metrics, const OracleThresholds& t,
                              const RunEvents& events, const FindingContext& context);

}  // namespace fuzzsense::oracle

#endif
