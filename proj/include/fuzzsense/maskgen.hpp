#ifndef FUZZSENSE_MASKGEN_HPP
#define FUZZSENSE_MASKGEN_HPP

#include <memory>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fuzzsense/core.hpp"

namespace fuzzsense::maskgen {

struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Geometry of the LiDAR injection plane: one mask cell covers cell_size x
/// cell_size meters on a plane perpendicular to the sensor forward axis.
/// Mask x runs left-to-right, mask y top-to-bottom.
struct PlaneSpec {
    double cell_size{0.1};  // meters per mask cell
};

/// Mount pose of a sensor in the ego frame.
struct SensorPose {
    double x{0}, y{0}, z{0};  // meters
    double yaw{0};            // radians
};

/// Raw coordinate samples before rounding and clamping: x ~ N(X*W, sigma_f*W),
/// y ~ N(Y*H, sigma_f*H), N_c = round(W*H*r_f) pairs. Exposed so tests can
/// check pre-clamp statistics.
std::vector<std::pair<double, double>> draw_samples(const SensorFuzzParams& p,
                                                    std::uint64_t rng_seed);

/// Builds the fuzzing mask: samples rounded half-away-from-zero, clamped into
/// [0,W] x [0,H], collected as a set. Pure function of (p, rng_seed).
FuzzingMask generate_mask(const SensorFuzzParams& p, std::uint64_t rng_seed);

/// Overwrites each masked pixel with round(I*255); everything else untouched.
/// Mask dimensions must equal frame dimensions.
CameraFrame apply_camera(const CameraFrame& frame, const FuzzingMask& mask,
                         const SensorFuzzParams& p);

/// Appends one point per mask cell on a plane at distance p.distance in front
/// of the sensor. Original points are untouched and order-preserved. The ring
/// index is the nearest elevation ring; pass an empty span for ring 0.
PointCloud project_and_inject_lidar(const PointCloud& cloud, const FuzzingMask& mask,
                                    const SensorFuzzParams& p, const PlaneSpec& spec,
                                    const SensorPose& sensor_pose,
                                    std::span<const double> ring_elevations_rad = {});

using SensorPayload = std::variant<PointCloud, CameraFrame>;

/// One plug-in per sensor stream. apply is deterministic given its inputs and
/// never removes pre-existing data.
class SensorFuzzerPlugin {
public:
    virtual ~SensorFuzzerPlugin() = default;
    virtual const std::string& stream_id() const = 0;
    virtual SensorPayload apply(const SensorPayload& payload, const FuzzingMask& mask,
                                const SensorFuzzParams& params) const = 0;
};

class LidarFuzzerPlugin final : public SensorFuzzerPlugin {
public:
    LidarFuzzerPlugin(std::string stream_id, PlaneSpec spec, SensorPose pose,
                      std::vector<double> ring_elevations_rad)
        : stream_id_(std::move(stream_id)),
          spec_(spec),
          pose_(pose),
          rings_(std::move(ring_elevations_rad)) {}

    const std::string& stream_id() const override { return stream_id_; }
    SensorPayload apply(const SensorPayload& payload, const FuzzingMask& mask,
                        const SensorFuzzParams& params) const override;

private:
    std::string stream_id_;
    PlaneSpec spec_;
    SensorPose pose_;
    std::vector<double> rings_;
};

class CameraFuzzerPlugin final : public SensorFuzzerPlugin {
public:
    explicit CameraFuzzerPlugin(std::string stream_id) : stream_id_(std::move(stream_id)) {}

    const std::string& stream_id() const override { return stream_id_; }
    SensorPayload apply(const SensorPayload& payload, const FuzzingMask& mask,
                        const SensorFuzzParams& params) const override;

private:
    std::string stream_id_;
};

}  // namespace fuzzsense::maskgen

#endif
