#include "fuzzsense/core.hpp"

#include <sstream>
#include <stdexcept>

namespace fuzzsense {

ValidationResult validate_params(const SensorFuzzParams& p, const SensorMeta& meta) {
    ValidationResult result;
    auto fail = [&result](const std::string& msg) { result.violations.push_back(msg); };

    if (p.change_ratio < 0.0 || p.change_ratio > 1.0) fail("change ratio out of [0,1]");
    if (p.dispersion < 0.0) fail("dispersion negative");
    if (p.center_x < 0.0 || p.center_x > 1.0) fail("center_x out of [0,1]");
    if (p.center_y < 0.0 || p.center_y > 1.0) fail("center_y out of [0,1]");
    if (p.mask_width < 1) fail("mask width must be >= 1");
    if (p.mask_height < 1) fail("mask height must be >= 1");
    if (p.intensity < 0.0 || p.intensity > 1.0) fail("intensity out of [0,1]");
    if (meta.kind == StreamKind::lidar) {
        if (!(p.distance > 0.0)) fail("distance must be > 0 for LiDAR streams");
        if (p.distance > meta.perception_range) fail("distance exceeds perception range");
    }
    return result;
}

const char* to_string(FindingKind kind) {
    switch (kind) {
        case FindingKind::trajectory_deviation: return "trajectory_deviation";
        case FindingKind::deceleration: return "deceleration";
        case FindingKind::immobility: return "immobility";
        case FindingKind::collision: return "collision";
        case FindingKind::timeout: return "timeout";
    }
    return "unknown";
}

FindingKind finding_kind_from_string(const std::string& s) {
    if (s == "trajectory_deviation") return FindingKind::trajectory_deviation;
    if (s == "deceleration") return FindingKind::deceleration;
    if (s == "immobility") return FindingKind::immobility;
    if (s == "collision") return FindingKind::collision;
    if (s == "timeout") return FindingKind::timeout;
    throw std::invalid_argument("unknown finding kind: " + s);
}

}  // namespace fuzzsense
