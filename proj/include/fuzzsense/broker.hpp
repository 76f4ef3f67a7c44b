#ifndef FUZZSENSE_BROKER_HPP
#define FUZZSENSE_BROKER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "fuzzsense/core.hpp"
#include "fuzzsense/maskgen.hpp"

namespace fuzzsense::broker {

struct LifecycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LifecycleVerb { start, stop, reset };

const char* to_string(LifecycleVerb verb);
LifecycleVerb lifecycle_verb_from_string(const std::string& s);

enum class MessageType { pointcloud, camera, control, cmd, ack };

const char* to_string(MessageType type);
MessageType message_type_from_string(const std::string& s);

struct AckPayload {
    bool ok{true};
    std::string detail;

    bool operator==(const AckPayload&) const = default;
};

struct BrokerMessage {
    MessageType type{MessageType::ack};
    std::string stream_id;  // sensor messages only
    std::int64_t frame_id{0};
    std::int64_t sim_time_ms{0};
    std::variant<std::monostate, PointCloud, CameraFrame, ControlCommand, LifecycleVerb, AckPayload>
        payload;

    bool operator==(const BrokerMessage&) const = default;
};

BrokerMessage make_sensor_message(std::string stream_id, PointCloud cloud);
BrokerMessage make_sensor_message(std::string stream_id, CameraFrame frame);

enum class BrokerState { stopped, running };

/// Intermediary between simulator and ADS: applies registered sensor-fuzzer
/// plug-ins to sensor frames, forwards control commands unmodified, and
/// relays lifecycle verbs to both endpoints.
class Broker {
public:
    using LifecycleSink = std::function<void(LifecycleVerb)>;
    using ControlSink = std::function<void(const ControlCommand&)>;

    void set_sim_lifecycle(LifecycleSink sink) { sim_lifecycle_ = std::move(sink); }
    void set_ads_lifecycle(LifecycleSink sink) { ads_lifecycle_ = std::move(sink); }
    void set_control_sink(ControlSink sink) { control_sink_ = std::move(sink); }

    void register_plugin(std::shared_ptr<const maskgen::SensorFuzzerPlugin> plugin);

    /// Arms one iteration's fixed mask and parameters for a stream. The same
    /// mask object is applied to every frame until re-armed or disarmed.
    void arm(const std::string& stream_id, std::shared_ptr<const FuzzingMask> mask,
             SensorFuzzParams params);
    void disarm_all();
    void set_fuzzing_enabled(bool enabled) { fuzzing_enabled_ = enabled; }
    bool fuzzing_enabled() const { return fuzzing_enabled_; }

    /// Transforms one sensor frame through the armed plug-in, or passes it
    /// through bit-identical. Returns nullopt when a malformed payload is
    /// dropped (recorded in dropped_frames()).
    std::optional<BrokerMessage> process_sensor_frame(const BrokerMessage& msg);

    /// Delivers a control command unmodified, in order.
    void forward_control(const ControlCommand& cmd);

    BrokerMessage lifecycle(LifecycleVerb verb);

    BrokerState state() const { return state_; }
    std::int64_t processed_frames() const { return processed_frames_; }
    std::int64_t dropped_frames() const { return dropped_frames_; }
    std::int64_t unknown_stream_frames() const { return unknown_stream_frames_; }
    std::int64_t forwarded_controls() const { return forwarded_controls_; }

    /// Identity of the armed mask for a stream (referentially constant within
    /// one iteration).
    std::shared_ptr<const FuzzingMask> armed_mask(const std::string& stream_id) const;

private:
    struct ArmedStream {
        std::shared_ptr<const FuzzingMask> mask;
        SensorFuzzParams params;
    };

    BrokerState state_{BrokerState::stopped};
    bool fuzzing_enabled_{false};
    std::map<std::string, std::shared_ptr<const maskgen::SensorFuzzerPlugin>> plugins_;
    std::map<std::string, ArmedStream> armed_;
    std::map<std::string, std::int64_t> last_sim_time_;
    LifecycleSink sim_lifecycle_;
    LifecycleSink ads_lifecycle_;
    ControlSink control_sink_;
    std::int64_t processed_frames_{0};
    std::int64_t dropped_frames_{0};
    std::int64_t unknown_stream_frames_{0};
    std::int64_t forwarded_controls_{0};
};

}  // namespace fuzzsense::broker

#endif
