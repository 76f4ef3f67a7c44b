#ifndef FUZZSENSE_CORE_HPP
#define FUZZSENSE_CORE_HPP

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fuzzsense {

enum class StreamKind { lidar, camera };

/// Static description of one sensor stream, used to bound fuzzing parameters.
struct SensorMeta {
    std::string stream_id;
    StreamKind kind{StreamKind::lidar};
    double perception_range{100.0};  // meters
};

/// The mutable parameter vector driving one sensor fuzzing iteration.
struct SensorFuzzParams {
    double change_ratio{0.0};  // fraction of mask cells manipulated, in [0,1]
    double dispersion{0.0};    // std dev relative to mask width/height, >= 0
    double center_x{0.5};      // fraction of mask width, in [0,1]
    double center_y{0.5};      // fraction of mask height, in [0,1]
    int mask_width{1};         // cells, >= 1
    int mask_height{1};        // cells, >= 1
    double intensity{0.0};     // grayscale brightness / LiDAR return intensity, in [0,1]
    double distance{1.0};      // meters, LiDAR only
    std::string stream_id;

    bool operator==(const SensorFuzzParams&) const = default;
};

/// Number of cells to manipulate: round(W*H*r_f), half away from zero.
inline long long changed_cell_target(const SensorFuzzParams& p) {
    return std::llround(static_cast<double>(p.mask_width) * p.mask_height * p.change_ratio);
}

struct ValidationResult {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every field invariant of SensorFuzzParams against the sensor metadata.
/// Violations are data, not failures.
ValidationResult validate_params(const SensorFuzzParams& p, const SensorMeta& meta);

/// Set of in-bounds integer grid coordinates produced by mask generation.
/// Coordinates are clamped into [0,W] x [0,H]; duplicates collapse.
struct FuzzingMask {
    int width{0};
    int height{0};
    std::set<std::pair<int, int>> coords;

    std::size_t effective_count() const { return coords.size(); }
    bool operator==(const FuzzingMask&) const = default;
};

struct LidarPoint {
    float x{0}, y{0}, z{0};   // meters, ego frame
    float intensity{0};       // fraction in [0,1]
    std::int32_t ring{0};     // elevation-ring index

    bool operator==(const LidarPoint&) const = default;
};

struct PointCloud {
    std::int64_t frame_id{0};
    std::int64_t sim_time_ms{0};
    std::vector<LidarPoint> points;

    bool operator==(const PointCloud&) const = default;
};

struct CameraFrame {
    std::int64_t frame_id{0};
    std::int64_t sim_time_ms{0};
    int width{0};
    int height{0};
    std::vector<std::uint8_t> pixels;  // row-major grayscale, length width*height

    bool operator==(const CameraFrame&) const = default;
};

struct ControlCommand {
    double steering{0.0};  // radians
    double accel{0.0};     // m/s^2

    bool operator==(const ControlCommand&) const = default;
};

/// Axis-aligned static obstacle box, centered at (x, y).
struct ObstacleBox {
    double x{0}, y{0};        // center, meters
    double width{1};          // extent along world y, meters
    double length{1};         // extent along world x, meters

    bool operator==(const ObstacleBox&) const = default;
};

struct ScenarioParams {
    std::string route_id;
    double goal_x{0}, goal_y{0};  // meters
    double target_speed{8.0};     // m/s
    std::vector<ObstacleBox> static_obstacles;
    std::uint64_t rng_seed{0};

    bool operator==(const ScenarioParams&) const = default;
};

struct TrajectoryRecord {
    std::int64_t sim_time_ms{0};
    double x{0}, y{0};   // meters
    double yaw{0};       // radians
    double speed{0};     // m/s

    bool operator==(const TrajectoryRecord&) const = default;
};

enum class FindingKind { trajectory_deviation, deceleration, immobility, collision, timeout };

const char* to_string(FindingKind kind);
FindingKind finding_kind_from_string(const std::string& s);

/// Metric values backing a finding.
struct FindingEvidence {
    double max_lateral_deviation{0};  // meters
    double min_speed_ratio{1};        // fraction
    double immobile_sec{0};           // seconds

    bool operator==(const FindingEvidence&) const = default;
};

struct Finding {
    FindingKind kind{FindingKind::trajectory_deviation};
    SensorFuzzParams sensor_params;
    ScenarioParams scenario_params;
    FindingEvidence evidence;
    std::string iteration_id;

    bool operator==(const Finding&) const = default;
};

}  // namespace fuzzsense

#endif
