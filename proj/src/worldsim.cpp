#include "fuzzsense/worldsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace fuzzsense::worldsim {

namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double deg) { return deg * kPi / 180.0; }

struct RayHit {
    bool hit{false};
    double range{std::numeric_limits<double>::infinity()};
};

// Slab intersection of a ray with an obstacle box spanning z in [0, height].
RayHit ray_box(double ox, double oy, double oz, double dx, double dy, double dz,
               const ObstacleBox& box, double height) {
    const double min_x = box.x - 0.5 * box.length;
    const double max_x = box.x + 0.5 * box.length;
    const double min_y = box.y - 0.5 * box.width;
    const double max_y = box.y + 0.5 * box.width;

    double t_near = 0.0;
    double t_far = std::numeric_limits<double>::infinity();
    const double origins[3] = {ox, oy, oz};
    const double dirs[3] = {dx, dy, dz};
    const double mins[3] = {min_x, min_y, 0.0};
    const double maxs[3] = {max_x, max_y, height};
    for (int axis = 0; axis < 3; ++axis) {
        if (std::abs(dirs[axis]) < 1e-12) {
            if (origins[axis] < mins[axis] || origins[axis] > maxs[axis]) return {};
            continue;
        }
        double t0 = (mins[axis] - origins[axis]) / dirs[axis];
        double t1 = (maxs[axis] - origins[axis]) / dirs[axis];
        if (t0 > t1) std::swap(t0, t1);
        t_near = std::max(t_near, t0);
        t_far = std::min(t_far, t1);
        if (t_near > t_far) return {};
    }
    if (t_near <= 1e-9) return {};
    return {true, t_near};
}

}  // namespace

std::vector<double> LidarSpec::ring_elevations_rad() const {
    std::vector<double> rings(static_cast<std::size_t>(ring_count));
    if (ring_count == 1) {
        rings[0] = deg2rad(0.5 * (min_elev_deg + max_elev_deg));
        return rings;
    }
    const double step = (max_elev_deg - min_elev_deg) / (ring_count - 1);
    for (int r = 0; r < ring_count; ++r) rings[static_cast<std::size_t>(r)] = deg2rad(min_elev_deg + r * step);
    return rings;
}

RoutePath::RoutePath(std::vector<std::array<double, 2>> centerline) : pts_(std::move(centerline)) {
    if (pts_.size() < 2) throw ScenarioError("route needs at least two centerline points");
    cumulative_.resize(pts_.size());
    cumulative_[0] = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        cumulative_[i] = cumulative_[i - 1] +
                         std::hypot(pts_[i][0] - pts_[i - 1][0], pts_[i][1] - pts_[i - 1][1]);
    }
}

std::array<double, 3> RoutePath::pose_at(double s) const {
    s = std::clamp(s, 0.0, length());
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    std::size_t i = (it == cumulative_.begin()) ? 1 : static_cast<std::size_t>(it - cumulative_.begin());
    if (i >= pts_.size()) i = pts_.size() - 1;
    const double seg_len = cumulative_[i] - cumulative_[i - 1];
    const double t = seg_len > 0 ? (s - cumulative_[i - 1]) / seg_len : 0.0;
    const double x = pts_[i - 1][0] + t * (pts_[i][0] - pts_[i - 1][0]);
    const double y = pts_[i - 1][1] + t * (pts_[i][1] - pts_[i - 1][1]);
    const double heading = std::atan2(pts_[i][1] - pts_[i - 1][1], pts_[i][0] - pts_[i - 1][0]);
    return {x, y, heading};
}

std::array<double, 2> RoutePath::project(double x, double y) const {
    double best_s = 0.0;
    double best_lat = 0.0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        const double ax = pts_[i - 1][0], ay = pts_[i - 1][1];
        const double bx = pts_[i][0], by = pts_[i][1];
        const double vx = bx - ax, vy = by - ay;
        const double seg_len2 = vx * vx + vy * vy;
        double t = seg_len2 > 0 ? ((x - ax) * vx + (y - ay) * vy) / seg_len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double px = ax + t * vx, py = ay + t * vy;
        const double dist = std::hypot(x - px, y - py);
        if (dist < best_dist) {
            best_dist = dist;
            best_s = cumulative_[i - 1] + t * std::sqrt(seg_len2);
            // sign: positive when left of segment direction
            const double cross = vx * (y - py) - vy * (x - px);
            best_lat = (cross >= 0 ? 1.0 : -1.0) * dist;
        }
    }
    return {best_s, best_lat};
}

RoutePath make_route(const std::string& route_id) {
    auto parse_len = [&route_id](std::size_t prefix_len) -> double {
        const char* first = route_id.data() + prefix_len;
        const char* last = route_id.data() + route_id.size();
        if (last > first && *(last - 1) == 'm') --last;
        double len = 0;
        auto [ptr, ec] = std::from_chars(first, last, len);
        if (ec != std::errc() || ptr != last || len <= 1.0) {
            throw ScenarioError("bad route id: " + route_id);
        }
        return len;
    };

    if (route_id.starts_with("straight_")) {
        const double len = parse_len(9);
        return RoutePath({{0.0, 0.0}, {len, 0.0}});
    }
    if (route_id.starts_with("curve_")) {
        const double len = parse_len(6);
        const double radius = 200.0;
        std::vector<std::array<double, 2>> pts;
        const int n = std::max(2, static_cast<int>(len));
        for (int i = 0; i <= n; ++i) {
            const double s = len * i / n;
            const double a = s / radius;
            pts.push_back({radius * std::sin(a), radius * (1.0 - std::cos(a))});
        }
        return RoutePath(std::move(pts));
    }
    throw ScenarioError("unknown route id: " + route_id);
}

ValidationResult validate_scenario(const ScenarioParams& s) {
    ValidationResult result;
    RoutePath route = [&]() -> RoutePath {
        try {
            return make_route(s.route_id);
        } catch (const ScenarioError& e) {
            result.violations.push_back(e.what());
            return RoutePath({{0, 0}, {1, 0}});
        }
    }();
    if (!result.ok()) return result;

    const auto [goal_s, goal_lat] = route.project(s.goal_x, s.goal_y);
    if (std::abs(goal_lat) > 0.5 * kLaneWidth) {
        result.violations.push_back("goal not on drivable area");
    }
    const auto spawn = route.pose_at(0.0);
    for (const auto& box : s.static_obstacles) {
        if (std::abs(spawn[0] - box.x) <= 0.5 * box.length + 2.0 &&
            std::abs(spawn[1] - box.y) <= 0.5 * box.width + 2.0) {
            result.violations.push_back("obstacle overlaps ego spawn pose");
        }
    }
    if (!(s.target_speed > 0)) result.violations.push_back("target speed must be > 0");
    return result;
}

World::World(const ScenarioParams& scenario, LidarSpec lidar, CameraSpec camera)
    : scenario_(scenario), lidar_(lidar), camera_(camera), route_(make_route(scenario.route_id)) {
    ValidationResult v = validate_scenario(scenario);
    if (!v.ok()) throw ScenarioError("invalid scenario: " + v.violations.front());
    reset();
}

void World::reset() {
    const auto spawn = route_.pose_at(0.0);
    ego_ = EgoState{spawn[0], spawn[1], spawn[2], 0.0};
    sim_time_ms_ = 0;
    frame_id_ = 0;
}

bool World::check_collision() const {
    for (const auto& box : scenario_.static_obstacles) {
        if (std::abs(ego_.x - box.x) <= 0.5 * box.length + 1.0 &&
            std::abs(ego_.y - box.y) <= 0.5 * box.width + 1.0) {
            return true;
        }
    }
    return false;
}

StepOutput World::step(const ControlCommand& control) {
    const double accel = std::clamp(control.accel, -kMaxDecel, kMaxAccel);
    const double steering = std::clamp(control.steering, -0.6, 0.6);

    // kinematic bicycle model, forward Euler at the fixed tick
    ego_.x += ego_.speed * std::cos(ego_.yaw) * kTickSec;
    ego_.y += ego_.speed * std::sin(ego_.yaw) * kTickSec;
    ego_.yaw += ego_.speed / kWheelbase * std::tan(steering) * kTickSec;
    ego_.speed = std::max(0.0, ego_.speed + accel * kTickSec);

    sim_time_ms_ += kTickMs;
    ++frame_id_;

    StepOutput out;
    out.ego = ego_;
    out.sim_time_ms = sim_time_ms_;
    out.cloud = lidar_scan(ego_, scenario_.static_obstacles, lidar_, frame_id_, sim_time_ms_);
    out.camera = camera_render(ego_, scenario_.static_obstacles, camera_, frame_id_, sim_time_ms_);
    out.collision = check_collision();
    return out;
}

PointCloud lidar_scan(const EgoState& ego, const std::vector<ObstacleBox>& obstacles,
                      const LidarSpec& spec, std::int64_t frame_id, std::int64_t sim_time_ms) {
    PointCloud cloud;
    cloud.frame_id = frame_id;
    cloud.sim_time_ms = sim_time_ms;

    const double sx = ego.x;
    const double sy = ego.y;
    const double sz = spec.mount_height;
    const auto rings = spec.ring_elevations_rad();
    const int azimuths = spec.azimuth_count();
    const double cos_yaw = std::cos(ego.yaw);
    const double sin_yaw = std::sin(ego.yaw);

    for (int ring = 0; ring < spec.ring_count; ++ring) {
        const double elev = rings[static_cast<std::size_t>(ring)];
        const double cos_e = std::cos(elev);
        const double sin_e = std::sin(elev);
        for (int a = 0; a < azimuths; ++a) {
            const double az = deg2rad(a * spec.azimuth_step_deg);
            // ray direction in world frame
            const double lx = cos_e * std::cos(az);
            const double ly = cos_e * std::sin(az);
            const double dx = lx * cos_yaw - ly * sin_yaw;
            const double dy = lx * sin_yaw + ly * cos_yaw;
            const double dz = sin_e;

            double range = std::numeric_limits<double>::infinity();
            if (dz < -1e-9) {
                range = -sz / dz;  // ground plane z = 0
            }
            for (const auto& box : obstacles) {
                const RayHit hit = ray_box(sx, sy, sz, dx, dy, dz, box, World::kObstacleHeight);
                if (hit.hit && hit.range < range) range = hit.range;
            }
            if (!(range <= spec.max_range)) continue;

            // hit point in world, converted into the ego frame
            const double wx = sx + dx * range;
            const double wy = sy + dy * range;
            const double wz = sz + dz * range;
            const double rx = wx - ego.x;
            const double ry = wy - ego.y;

            LidarPoint pt;
            pt.x = static_cast<float>(rx * cos_yaw + ry * sin_yaw);
            pt.y = static_cast<float>(-rx * sin_yaw + ry * cos_yaw);
            pt.z = static_cast<float>(wz);
            pt.intensity = static_cast<float>(std::max(0.05, 1.0 - range / spec.max_range));
            pt.ring = ring;
            cloud.points.push_back(pt);
        }
    }
    return cloud;
}

CameraFrame camera_render(const EgoState& ego, const std::vector<ObstacleBox>& obstacles,
                          const CameraSpec& spec, std::int64_t frame_id,
                          std::int64_t sim_time_ms) {
    CameraFrame frame;
    frame.frame_id = frame_id;
    frame.sim_time_ms = sim_time_ms;
    frame.width = spec.width;
    frame.height = spec.height;
    frame.pixels.assign(static_cast<std::size_t>(spec.width) * spec.height, 0);

    const int horizon = spec.height / 2;
    for (int y = 0; y < spec.height; ++y) {
        const std::uint8_t value = y < horizon ? 30 : 80;
        std::fill_n(frame.pixels.begin() + static_cast<std::size_t>(y) * spec.width, spec.width,
                    value);
    }

    // obstacle silhouettes: bearing to column, distance to brightness/size
    const double fov = deg2rad(90.0);
    for (const auto& box : obstacles) {
        const double rx = box.x - ego.x;
        const double ry = box.y - ego.y;
        const double fx = rx * std::cos(-ego.yaw) - ry * std::sin(-ego.yaw);
        const double fy = rx * std::sin(-ego.yaw) + ry * std::cos(-ego.yaw);
        if (fx < 1.0 || fx > 60.0) continue;
        const double bearing = std::atan2(fy, fx);
        if (std::abs(bearing) > 0.5 * fov) continue;
        const int col = static_cast<int>((0.5 - bearing / fov) * (spec.width - 1));
        const int half_cols = std::max(1, static_cast<int>(spec.width * box.width / (2.0 * fx)));
        const int half_rows = std::max(1, static_cast<int>(spec.height * World::kObstacleHeight / (2.0 * fx)));
        const auto brightness = static_cast<std::uint8_t>(std::clamp(255.0 - 3.0 * fx, 120.0, 255.0));
        for (int y = std::max(0, horizon - half_rows); y <= std::min(spec.height - 1, horizon + half_rows); ++y) {
            for (int x = std::max(0, col - half_cols); x <= std::min(spec.width - 1, col + half_cols); ++x) {
                frame.pixels[static_cast<std::size_t>(y) * spec.width + x] = brightness;
            }
        }
    }
    return frame;
}

std::vector<Obstacle> perceive(const PointCloud& cloud, const RoutePath& route,
                               const EgoState& ego, const PerceptionParams& params) {
    const auto [ego_s, ego_lat] = route.project(ego.x, ego.y);
    const double cos_yaw = std::cos(ego.yaw);
    const double sin_yaw = std::sin(ego.yaw);

    struct Candidate {
        double s_rel;
        double lateral;
    };
    std::vector<Candidate> candidates;
    for (const auto& pt : cloud.points) {
        if (pt.z < params.ground_height) continue;
        // ego frame -> world
        const double wx = ego.x + pt.x * cos_yaw - pt.y * sin_yaw;
        const double wy = ego.y + pt.x * sin_yaw + pt.y * cos_yaw;
        const auto [s, lateral] = route.project(wx, wy);
        if (std::abs(lateral) > 0.5 * kLaneWidth) continue;
        const double s_rel = s - ego_s;
        if (s_rel < params.min_ahead) continue;
        candidates.push_back({s_rel, lateral});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.s_rel < b.s_rel; });

    std::vector<Obstacle> obstacles;
    std::size_t begin = 0;
    while (begin < candidates.size()) {
        std::size_t end = begin + 1;
        while (end < candidates.size() &&
               candidates[end].s_rel - candidates[end - 1].s_rel <= params.cluster_gap) {
            ++end;
        }
        if (end - begin >= static_cast<std::size_t>(params.min_cluster_size)) {
            double lat_sum = 0, lat_min = candidates[begin].lateral, lat_max = candidates[begin].lateral;
            for (std::size_t i = begin; i < end; ++i) {
                lat_sum += candidates[i].lateral;
                lat_min = std::min(lat_min, candidates[i].lateral);
                lat_max = std::max(lat_max, candidates[i].lateral);
            }
            obstacles.push_back({candidates[begin].s_rel, lat_sum / static_cast<double>(end - begin),
                                 lat_max - lat_min});
        }
        begin = end;
    }
    return obstacles;
}

ControlCommand plan(const std::vector<Obstacle>& obstacles, const RoutePath& route,
                    const EgoState& ego, double target_speed, const PlannerParams& params) {
    const auto [ego_s, ego_lat] = route.project(ego.x, ego.y);

    // pure pursuit toward a lookahead point on the centerline
    const auto target = route.pose_at(ego_s + params.lookahead);
    const double rx = target[0] - ego.x;
    const double ry = target[1] - ego.y;
    const double alpha = std::atan2(ry, rx) - ego.yaw;
    const double steering =
        std::atan2(2.0 * World::kWheelbase * std::sin(alpha), params.lookahead);

    // obstacle-gated speed: full speed beyond d_slow, linear ramp to zero at d_stop
    double commanded = target_speed;
    if (!obstacles.empty()) {
        const double nearest = obstacles.front().distance_along;
        if (nearest <= params.d_stop) {
            commanded = 0.0;
        } else if (nearest < params.d_slow) {
            commanded = target_speed * (nearest - params.d_stop) / (params.d_slow - params.d_stop);
        }
    }
    const double accel = std::clamp(params.accel_gain * (commanded - ego.speed),
                                    -World::kMaxDecel, World::kMaxAccel);
    return ControlCommand{steering, accel};
}

}  // namespace fuzzsense::worldsim
