#ifndef FUZZSENSE_WORLDSIM_HPP
#define FUZZSENSE_WORLDSIM_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzsense/core.hpp"

namespace fuzzsense::worldsim {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed simulation tick, approx. 30 frames per second.
inline constexpr std::int64_t kTickMs = 33;
inline constexpr double kTickSec = 0.033;

inline constexpr double kLaneWidth = 3.5;  // meters

/// Ring-pattern LiDAR description.
struct LidarSpec {
    int ring_count{16};
    double min_elev_deg{-15.0};
    double max_elev_deg{15.0};
    double azimuth_step_deg{0.5};
    double max_range{100.0};       // meters
    double mount_height{1.8};      // meters above ground

    std::vector<double> ring_elevations_rad() const;
    int azimuth_count() const { return static_cast<int>(360.0 / azimuth_step_deg); }
};

struct CameraSpec {
    int width{160};
    int height{120};
};

/// Lane centerline with arc-length parametrization.
class RoutePath {
public:
    explicit RoutePath(std::vector<std::array<double, 2>> centerline);

    double length() const { return cumulative_.back(); }

    /// (x, y, heading) at arc length s, clamped to [0, length].
    std::array<double, 3> pose_at(double s) const;

    /// Projects a world point onto the path: returns (s, signed lateral offset).
    /// Positive lateral is left of the path direction.
    std::array<double, 2> project(double x, double y) const;

private:
    std::vector<std::array<double, 2>> pts_;
    std::vector<double> cumulative_;
};

/// Builds the route for a route_id: "straight_<N>m" or "curve_<N>m".
RoutePath make_route(const std::string& route_id);

/// Checks goal on drivable area and obstacles clear of the spawn pose.
ValidationResult validate_scenario(const ScenarioParams& s);

struct EgoState {
    double x{0}, y{0};
    double yaw{0};
    double speed{0};

    bool operator==(const EgoState&) const = default;
};

struct StepOutput {
    EgoState ego;
    std::int64_t sim_time_ms{0};
    PointCloud cloud;
    CameraFrame camera;
    bool collision{false};
};

/// Deterministic stepped world: lane geometry, static obstacles, kinematic
/// bicycle ego, ring LiDAR and synthetic grayscale camera.
class World {
public:
    World(const ScenarioParams& scenario, LidarSpec lidar = {}, CameraSpec camera = {});

    StepOutput step(const ControlCommand& control);
    void reset();

    const EgoState& ego() const { return ego_; }
    std::int64_t sim_time_ms() const { return sim_time_ms_; }
    const RoutePath& route() const { return route_; }
    const LidarSpec& lidar_spec() const { return lidar_; }

    static constexpr double kWheelbase = 2.7;   // meters
    static constexpr double kMaxAccel = 2.0;    // m/s^2
    static constexpr double kMaxDecel = 4.0;    // m/s^2
    static constexpr double kObstacleHeight = 2.0;

private:
    ScenarioParams scenario_;
    LidarSpec lidar_;
    CameraSpec camera_;
    RoutePath route_;
    EgoState ego_;
    std::int64_t sim_time_ms_{0};
    std::int64_t frame_id_{0};

    bool check_collision() const;
};

/// Ray-casts one LiDAR sweep against the ground plane and obstacle boxes.
/// Points are returned in the ego frame (z measured from the ground).
PointCloud lidar_scan(const EgoState& ego, const std::vector<ObstacleBox>& obstacles,
                      const LidarSpec& spec, std::int64_t frame_id, std::int64_t sim_time_ms);

/// Synthetic grayscale render of horizon and obstacle silhouettes.
CameraFrame camera_render(const EgoState& ego, const std::vector<ObstacleBox>& obstacles,
                          const CameraSpec& spec, std::int64_t frame_id,
                          std::int64_t sim_time_ms);

// --- reference ADS (corridor perception + speed planner) ---

struct PerceptionParams {
    double ground_height{0.2};   // meters; points below are dropped as ground
    double cluster_gap{0.5};     // meters along-path connectivity
    int min_cluster_size{5};     // points
    double min_ahead{0.5};       // meters; ignore points behind/at the ego
};

struct PlannerParams {
    double d_slow{40.0};         // meters; start of deceleration profile
    double d_stop{8.0};          // meters; commanded stop distance
    double lookahead{6.0};       // meters, pure pursuit
    double accel_gain{2.0};      // 1/s
};

struct Obstacle {
    double distance_along{0};    // meters ahead of the ego along the path
    double lateral{0};           // meters, mean signed offset
    double extent{0};            // meters, lateral span of the cluster
};

/// Drops ground points, keeps points in the lane-width corridor ahead of the
/// ego, clusters by along-path connectivity, returns obstacles nearest-first.
std::vector<Obstacle> perceive(const PointCloud& cloud, const RoutePath& route,
                               const EgoState& ego, const PerceptionParams& params = {});

/// Pure-pursuit steering plus obstacle-gated speed control. No lateral
/// re-planning around corridor-spanning obstacles.
ControlCommand plan(const std::vector<Obstacle>& obstacles, const RoutePath& route,
                    const EgoState& ego, double target_speed,
                    const PlannerParams& params = {});

/// Convenience bundle of perceive + plan with fixed parameters.
class ReferenceAds {
public:
    ReferenceAds(const RoutePath* route, double target_speed, PerceptionParams perception = {},
                 PlannerParams planner = {})
        : route_(route), target_speed_(target_speed), perception_(perception),
          planner_(planner) {}

    ControlCommand tick(const PointCloud& cloud, const EgoState& ego) const {
        return plan(perceive(cloud, *route_, ego, perception_), *route_, ego, target_speed_,
                    planner_);
    }

private:
    const RoutePath* route_;
    double target_speed_;
    PerceptionParams perception_;
    PlannerParams planner_;
};

}  // namespace fuzzsense::worldsim

#endif
