#ifndef FUZZSENSE_CONFIG_HPP
#define FUZZSENSE_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzsense/core.hpp"
#include "fuzzsense/maskgen.hpp"
#include "fuzzsense/mutator.hpp"
#include "fuzzsense/oracle.hpp"
#include "fuzzsense/worldsim.hpp"

namespace fuzzsense::orchestrator {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IterationId {
    int campaign{0};
    int scenario_index{0};
    int sensor_index{0};

    std::string str() const;
    static IterationId parse(const std::string& s);

    auto operator<=>(const IterationId&) const = default;
};

/// Campaign stop conditions; 0 means unlimited.
struct StopConditions {
    int max_iterations{0};
    double wall_budget_sec{0};
    bool stop_on_first_finding{false};
};

struct CampaignConfig {
    std::uint64_t master_seed{0};
    StopConditions stop;
    oracle::OracleThresholds thresholds;
    ScenarioParams scenario_seed;
    mutator::GridSpec scenario_grid;
    SensorFuzzParams sensor_seed;
    mutator::GridSpec sensor_grid;
    std::string target_stream{"lidar0"};
    worldsim::LidarSpec lidar;
    worldsim::CameraSpec camera;
    worldsim::PerceptionParams perception;
    worldsim::PlannerParams planner;
    maskgen::PlaneSpec plane;
    std::string transport{"inproc"};
};

/// Checks the config against schema bounds: seeds validate, grids validate,
/// every grid value keeps the parameter vector within sensor bounds.
ValidationResult validate_config(const CampaignConfig& config);

/// Persisted outcome of one sensor fuzzing iteration.
struct IterationRecord {
    IterationId id;
    ScenarioParams scenario_params;
    SensorFuzzParams sensor_params;
    std::string mask_digest;
    std::uint64_t rng_seed{0};
    std::string outcome;  // "finished" | "failed" | "finding" | "scenario_invalid"
    std::vector<std::string> finding_kinds;
    oracle::DeviationMetrics metrics;
    std::int64_t frames_processed{0};
    std::int64_t trajectory_len{0};
    std::string wall;  // wall-clock sidecar, excluded from determinism comparisons
};

struct CampaignReport {
    std::vector<IterationRecord> iterations;
    std::vector<Finding> findings;
    std::string stop_reason;  // "exhausted" | "max_iterations" | "wall_budget" |
                              // "first_finding" | "aborted"
};

/// Hex FNV-1a digest of the mask contents, stored in iteration records.
std::string mask_digest(const FuzzingMask& mask);

/// Reproducible per-iteration seed derived from the master seed and indices.
std::uint64_t derive_seed(std::uint64_t master_seed, int scenario_index, int sensor_index);

}  // namespace fuzzsense::orchestrator

#endif
