#include "fuzzsense/maskgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fuzzsense::maskgen {

namespace {

void require_valid(const SensorFuzzParams& p) {
    // Stream-independent field invariants; the distance bound is checked by the
    // mutator against sensor metadata.
    SensorMeta unbounded{p.stream_id, StreamKind::camera, 0.0};
    ValidationResult v = validate_params(p, unbounded);
    if (!v.ok()) throw ParameterError("invalid sensor fuzz params: " + v.violations.front());
}

// Half-away-from-zero rounding, then clamp into [0, limit].
int round_clamp(double value, int limit) {
    long long r = std::llround(value);
    if (r < 0) return 0;
    if (r > limit) return limit;
    return static_cast<int>(r);
}

}  // namespace

std::vector<std::pair<double, double>> draw_samples(const SensorFuzzParams& p,
                                                    std::uint64_t rng_seed) {
    require_valid(p);
    const long long count = changed_cell_target(p);
    const double mean_x = p.center_x * p.mask_width;
    const double mean_y = p.center_y * p.mask_height;
    const double sigma_x = p.dispersion * p.mask_width;
    const double sigma_y = p.dispersion * p.mask_height;

    std::mt19937_64 rng(rng_seed);
    // x column first, then y column, stacked into pairs afterwards.
    std::vector<double> xs(count, mean_x);
    std::vector<double> ys(count, mean_y);
    if (sigma_x > 0.0) {
        std::normal_distribution<double> dist(mean_x, sigma_x);
        for (auto& x : xs) x = dist(rng);
    }
    if (sigma_y > 0.0) {
        std::normal_distribution<double> dist(mean_y, sigma_y);
        for (auto& y : ys) y = dist(rng);
    }

    std::vector<std::pair<double, double>> samples;
    samples.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) samples.emplace_back(xs[i], ys[i]);
    return samples;
}

FuzzingMask generate_mask(const SensorFuzzParams& p, std::uint64_t rng_seed) {
    FuzzingMask mask;
    mask.width = p.mask_width;
    mask.height = p.mask_height;
    for (const auto& [sx, sy] : draw_samples(p, rng_seed)) {
        mask.coords.emplace(round_clamp(sx, p.mask_width), round_clamp(sy, p.mask_height));
    }
    return mask;
}

CameraFrame apply_camera(const CameraFrame& frame, const FuzzingMask& mask,
                         const SensorFuzzParams& p) {
    if (mask.width != frame.width || mask.height != frame.height) {
        throw ConfigurationError("mask dimensions do not match camera frame dimensions");
    }
    CameraFrame out = frame;
    const auto value = static_cast<std::uint8_t>(std::llround(p.intensity * 255.0));
    for (const auto& [x, y] : mask.coords) {
        if (x < frame.width && y < frame.height) {
            out.pixels[static_cast<std::size_t>(y) * frame.width + x] = value;
        }
    }
    return out;
}

PointCloud project_and_inject_lidar(const PointCloud& cloud, const FuzzingMask& mask,
                                    const SensorFuzzParams& p, const PlaneSpec& spec,
                                    const SensorPose& sensor_pose,
                                    std::span<const double> ring_elevations_rad) {
    PointCloud out = cloud;
    out.points.reserve(cloud.points.size() + mask.coords.size());

    const double half_w = 0.5 * mask.width;
    const double half_h = 0.5 * mask.height;
    const double cos_yaw = std::cos(sensor_pose.yaw);
    const double sin_yaw = std::sin(sensor_pose.yaw);

    for (const auto& [cx, cy] : mask.coords) {
        // Sensor-local offsets: forward d, right (x - W/2)*cell, up (H/2 - y)*cell.
        const double forward = p.distance;
        const double right = (cx - half_w) * spec.cell_size;
        const double up = (half_h - cy) * spec.cell_size;

        LidarPoint pt;
        pt.x = static_cast<float>(sensor_pose.x + forward * cos_yaw + right * sin_yaw);
        pt.y = static_cast<float>(sensor_pose.y + forward * sin_yaw - right * cos_yaw);
        pt.z = static_cast<float>(sensor_pose.z + up);
        pt.intensity = static_cast<float>(p.intensity);

        if (!ring_elevations_rad.empty()) {
            const double horiz = std::hypot(forward, right);
            const double elev = std::atan2(up, horiz);
            std::size_t best = 0;
            double best_err = std::abs(ring_elevations_rad[0] - elev);
            for (std::size_t r = 1; r < ring_elevations_rad.size(); ++r) {
                const double err = std::abs(ring_elevations_rad[r] - elev);
                if (err < best_err) {
                    best_err = err;
                    best = r;
                }
            }
            pt.ring = static_cast<std::int32_t>(best);
        }
        out.points.push_back(pt);
    }
    return out;
}

SensorPayload LidarFuzzerPlugin::apply(const SensorPayload& payload, const FuzzingMask& mask,
                                       const SensorFuzzParams& params) const {
    const auto* cloud = std::get_if<PointCloud>(&payload);
    if (cloud == nullptr) throw ConfigurationError("LiDAR plug-in received a non-pointcloud payload");
    return project_and_inject_lidar(*cloud, mask, params, spec_, pose_, rings_);
}

SensorPayload CameraFuzzerPlugin::apply(const SensorPayload& payload, const FuzzingMask& mask,
                                        const SensorFuzzParams& params) const {
    const auto* frame = std::get_if<CameraFrame>(&payload);
    if (frame == nullptr) throw ConfigurationError("camera plug-in received a non-camera payload");
    return apply_camera(*frame, mask, params);
}

}  // namespace fuzzsense::maskgen
