#include "fuzzsense/broker.hpp"

namespace fuzzsense::broker {

const char* to_string(LifecycleVerb verb) {
    switch (verb) {
        case LifecycleVerb::start: return "start";
        case LifecycleVerb::stop: return "stop";
        case LifecycleVerb::reset: return "reset";
    }
    return "unknown";
}

LifecycleVerb lifecycle_verb_from_string(const std::string& s) {
    if (s == "start") return LifecycleVerb::start;
    if (s == "stop") return LifecycleVerb::stop;
    if (s == "reset") return LifecycleVerb::reset;
    throw std::invalid_argument("unknown lifecycle verb: " + s);
}

const char* to_string(MessageType type) {
    switch (type) {
        case MessageType::pointcloud: return "pointcloud";
        case MessageType::camera: return "camera";
        case MessageType::control: return "control";
        case MessageType::cmd: return "cmd";
        case MessageType::ack: return "ack";
    }
    return "unknown";
}

MessageType message_type_from_string(const std::string& s) {
    if (s == "pointcloud") return MessageType::pointcloud;
    if (s == "camera") return MessageType::camera;
    if (s == "control") return MessageType::control;
    if (s == "cmd") return MessageType::cmd;
    if (s == "ack") return MessageType::ack;
    throw std::invalid_argument("unknown message type: " + s);
}

BrokerMessage make_sensor_message(std::string stream_id, PointCloud cloud) {
    BrokerMessage msg;
    msg.type = MessageType::pointcloud;
    msg.stream_id = std::move(stream_id);
    msg.frame_id = cloud.frame_id;
    msg.sim_time_ms = cloud.sim_time_ms;
    msg.payload = std::move(cloud);
    return msg;
}

BrokerMessage make_sensor_message(std::string stream_id, CameraFrame frame) {
    BrokerMessage msg;
    msg.type = MessageType::camera;
    msg.stream_id = std::move(stream_id);
    msg.frame_id = frame.frame_id;
    msg.sim_time_ms = frame.sim_time_ms;
    msg.payload = std::move(frame);
    return msg;
}

void Broker::register_plugin(std::shared_ptr<const maskgen::SensorFuzzerPlugin> plugin) {
    plugins_[plugin->stream_id()] = std::move(plugin);
}

void Broker::arm(const std::string& stream_id, std::shared_ptr<const FuzzingMask> mask,
                 SensorFuzzParams params) {
    armed_[stream_id] = ArmedStream{std::move(mask), std::move(params)};
}

void Broker::disarm_all() { armed_.clear(); }

std::shared_ptr<const FuzzingMask> Broker::armed_mask(const std::string& stream_id) const {
    const auto it = armed_.find(stream_id);
    return it == armed_.end() ? nullptr : it->second.mask;
}

std::optional<BrokerMessage> Broker::process_sensor_frame(const BrokerMessage& msg) {
    if (state_ != BrokerState::running) {
        throw LifecycleError("sensor frame received while broker is stopped");
    }
    if (msg.type != MessageType::pointcloud && msg.type != MessageType::camera) {
        throw LifecycleError("process_sensor_frame expects a sensor message");
    }

    // malformed payloads are dropped with an error record
    if (const auto* frame = std::get_if<CameraFrame>(&msg.payload)) {
        if (frame->pixels.size() != static_cast<std::size_t>(frame->width) * frame->height) {
            ++dropped_frames_;
            return std::nullopt;
        }
    }
    if (msg.type == MessageType::pointcloud && !std::holds_alternative<PointCloud>(msg.payload)) {
        ++dropped_frames_;
        return std::nullopt;
    }
    if (msg.type == MessageType::camera && !std::holds_alternative<CameraFrame>(msg.payload)) {
        ++dropped_frames_;
        return std::nullopt;
    }

    // per-stream sim_time must be monotonically non-decreasing
    auto [it, inserted] = last_sim_time_.try_emplace(msg.stream_id, msg.sim_time_ms);
    if (!inserted) {
        if (msg.sim_time_ms < it->second) {
            ++dropped_frames_;
            return std::nullopt;
        }
        it->second = msg.sim_time_ms;
    }

    ++processed_frames_;

    const auto plugin_it = plugins_.find(msg.stream_id);
    if (plugin_it == plugins_.end()) {
        // unknown stream: routed unmodified (warning recorded as a counter)
        ++unknown_stream_frames_;
        return msg;
    }

    const auto armed_it = armed_.find(msg.stream_id);
    if (!fuzzing_enabled_ || armed_it == armed_.end()) {
        return msg;  // passthrough, bit-identical
    }

    maskgen::SensorPayload payload = msg.type == MessageType::pointcloud
        ? maskgen::SensorPayload(std::get<PointCloud>(msg.payload))
        : maskgen::SensorPayload(std::get<CameraFrame>(msg.payload));
    maskgen::SensorPayload fuzzed =
        plugin_it->second->apply(payload, *armed_it->second.mask, armed_it->second.params);

    BrokerMessage out = msg;
    if (auto* cloud = std::get_if<PointCloud>(&fuzzed)) {
        out.payload = std::move(*cloud);
    } else {
        out.payload = std::move(std::get<CameraFrame>(fuzzed));
    }
    return out;
}

void Broker::forward_control(const ControlCommand& cmd) {
    if (state_ != BrokerState::running) {
        throw LifecycleError("control command received while broker is stopped");
    }
    ++forwarded_controls_;
    if (control_sink_) control_sink_(cmd);
}

BrokerMessage Broker::lifecycle(LifecycleVerb verb) {
    switch (verb) {
        case LifecycleVerb::start:
            if (state_ != BrokerState::stopped) throw LifecycleError("start while running");
            state_ = BrokerState::running;
            break;
        case LifecycleVerb::stop:
            if (state_ != BrokerState::running) throw LifecycleError("stop while stopped");
            state_ = BrokerState::stopped;
            break;
        case LifecycleVerb::reset:
            state_ = BrokerState::stopped;
            last_sim_time_.clear();
            processed_frames_ = 0;
            dropped_frames_ = 0;
            unknown_stream_frames_ = 0;
            forwarded_controls_ = 0;
            break;
    }
    if (sim_lifecycle_) sim_lifecycle_(verb);
    if (ads_lifecycle_) ads_lifecycle_(verb);

    BrokerMessage ack;
    ack.type = MessageType::ack;
    ack.payload = AckPayload{true, to_string(verb)};
    return ack;
}

}  // namespace fuzzsense::broker
