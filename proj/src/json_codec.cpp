#include "fuzzsense/json_codec.hpp"

using nlohmann::json;

namespace fuzzsense {

void to_json(json& j, const SensorFuzzParams& p) {
    j = json{{"change_ratio", p.change_ratio}, {"dispersion", p.dispersion},
             {"center_x", p.center_x},         {"center_y", p.center_y},
             {"mask_width", p.mask_width},     {"mask_height", p.mask_height},
             {"intensity", p.intensity},       {"distance", p.distance},
             {"stream_id", p.stream_id}};
}

void from_json(const json& j, SensorFuzzParams& p) {
    j.at("change_ratio").get_to(p.change_ratio);
    j.at("dispersion").get_to(p.dispersion);
    j.at("center_x").get_to(p.center_x);
    j.at("center_y").get_to(p.center_y);
    j.at("mask_width").get_to(p.mask_width);
    j.at("mask_height").get_to(p.mask_height);
    j.at("intensity").get_to(p.intensity);
    j.at("distance").get_to(p.distance);
    j.at("stream_id").get_to(p.stream_id);
}

void to_json(json& j, const ObstacleBox& b) {
    j = json{{"x", b.x}, {"y", b.y}, {"width", b.width}, {"length", b.length}};
}

void from_json(const json& j, ObstacleBox& b) {
    j.at("x").get_to(b.x);
    j.at("y").get_to(b.y);
    j.at("width").get_to(b.width);
    j.at("length").get_to(b.length);
}

void to_json(json& j, const ScenarioParams& s) {
    j = json{{"route_id", s.route_id},
             {"goal_x", s.goal_x},
             {"goal_y", s.goal_y},
             {"target_speed", s.target_speed},
             {"static_obstacles", s.static_obstacles},
             {"rng_seed", s.rng_seed}};
}

void from_json(const json& j, ScenarioParams& s) {
    j.at("route_id").get_to(s.route_id);
    j.at("goal_x").get_to(s.goal_x);
    j.at("goal_y").get_to(s.goal_y);
    j.at("target_speed").get_to(s.target_speed);
    j.at("static_obstacles").get_to(s.static_obstacles);
    j.at("rng_seed").get_to(s.rng_seed);
}

void to_json(json& j, const TrajectoryRecord& r) {
    j = json{{"sim_time_ms", r.sim_time_ms}, {"x", r.x}, {"y", r.y}, {"yaw", r.yaw},
             {"speed", r.speed}};
}

void from_json(const json& j, TrajectoryRecord& r) {
    j.at("sim_time_ms").get_to(r.sim_time_ms);
    j.at("x").get_to(r.x);
    j.at("y").get_to(r.y);
    j.at("yaw").get_to(r.yaw);
    j.at("speed").get_to(r.speed);
}

void to_json(json& j, const LidarPoint& p) {
    j = json{{"x", p.x}, {"y", p.y}, {"z", p.z}, {"intensity", p.intensity}, {"ring", p.ring}};
}

void from_json(const json& j, LidarPoint& p) {
    j.at("x").get_to(p.x);
    j.at("y").get_to(p.y);
    j.at("z").get_to(p.z);
    j.at("intensity").get_to(p.intensity);
    j.at("ring").get_to(p.ring);
}

void to_json(json& j, const PointCloud& c) {
    j = json{{"frame_id", c.frame_id}, {"sim_time_ms", c.sim_time_ms}, {"points", c.points}};
}

void from_json(const json& j, PointCloud& c) {
    j.at("frame_id").get_to(c.frame_id);
    j.at("sim_time_ms").get_to(c.sim_time_ms);
    j.at("points").get_to(c.points);
}

void to_json(json& j, const CameraFrame& f) {
    j = json{{"frame_id", f.frame_id}, {"sim_time_ms", f.sim_time_ms}, {"width", f.width},
             {"height", f.height},     {"pixels", f.pixels}};
}

void from_json(const json& j, CameraFrame& f) {
    j.at("frame_id").get_to(f.frame_id);
    j.at("sim_time_ms").get_to(f.sim_time_ms);
    j.at("width").get_to(f.width);
    j.at("height").get_to(f.height);
    j.at("pixels").get_to(f.pixels);
}

void to_json(json& j, const ControlCommand& c) {
    j = json{{"steering", c.steering}, {"accel", c.accel}};
}

void from_json(const json& j, ControlCommand& c) {
    j.at("steering").get_to(c.steering);
    j.at("accel").get_to(c.accel);
}

void to_json(json& j, const FindingEvidence& e) {
    j = json{{"max_lateral_deviation", e.max_lateral_deviation},
             {"min_speed_ratio", e.min_speed_ratio},
             {"immobile_sec", e.immobile_sec}};
}

void from_json(const json& j, FindingEvidence& e) {
    j.at("max_lateral_deviation").get_to(e.max_lateral_deviation);
    j.at("min_speed_ratio").get_to(e.min_speed_ratio);
    j.at("immobile_sec").get_to(e.immobile_sec);
}

void to_json(json& j, const Finding& f) {
    j = json{{"kind", to_string(f.kind)},
             {"sensor_params", f.sensor_params},
             {"scenario_params", f.scenario_params},
             {"evidence", f.evidence},
             {"iteration_id", f.iteration_id}};
}

void from_json(const json& j, Finding& f) {
    f.kind = finding_kind_from_string(j.at("kind").get<std::string>());
    j.at("sensor_params").get_to(f.sensor_params);
    j.at("scenario_params").get_to(f.scenario_params);
    j.at("evidence").get_to(f.evidence);
    j.at("iteration_id").get_to(f.iteration_id);
}

}  // namespace fuzzsense

namespace fuzzsense::broker {

void to_json(json& j, const BrokerMessage& m) {
    j = json{{"type", to_string(m.type)},
             {"stream_id", m.stream_id},
             {"frame_id", m.frame_id},
             {"sim_time_ms", m.sim_time_ms}};
    switch (m.type) {
        case MessageType::pointcloud:
            j["payload"] = std::get<PointCloud>(m.payload);
            break;
        case MessageType::camera:
            j["payload"] = std::get<CameraFrame>(m.payload);
            break;
        case MessageType::control:
            j["payload"] = std::get<ControlCommand>(m.payload);
            break;
        case MessageType::cmd:
            j["verb"] = to_string(std::get<LifecycleVerb>(m.payload));
            break;
        case MessageType::ack: {
            const auto& ack = std::get<AckPayload>(m.payload);
            j["payload"] = json{{"ok", ack.ok}, {"detail", ack.detail}};
            break;
        }
    }
}

void from_json(const json& j, BrokerMessage& m) {
    m.type = message_type_from_string(j.at("type").get<std::string>());
    m.stream_id = j.value("stream_id", std::string{});
    m.frame_id = j.value("frame_id", std::int64_t{0});
    m.sim_time_ms = j.value("sim_time_ms", std::int64_t{0});
    switch (m.type) {
        case MessageType::pointcloud:
            m.payload = j.at("payload").get<PointCloud>();
            break;
        case MessageType::camera:
            m.payload = j.at("payload").get<CameraFrame>();
            break;
        case MessageType::control:
            m.payload = j.at("payload").get<ControlCommand>();
            break;
        case MessageType::cmd:
            m.payload = lifecycle_verb_from_string(j.at("verb").get<std::string>());
            break;
        case MessageType::ack: {
            AckPayload ack;
            ack.ok = j.at("payload").at("ok").get<bool>();
            ack.detail = j.at("payload").at("detail").get<std::string>();
            m.payload = ack;
            break;
        }
    }
}

}  // namespace fuzzsense::broker

namespace fuzzsense::oracle {

void to_json(json& j, const OracleThresholds& t) {
    j = json{{"eps_lateral", t.eps_lateral},
             {"speed_ratio_min", t.speed_ratio_min},
             {"sustain_sec", t.sustain_sec},
             {"immobility_speed", t.immobility_speed},
             {"immobility_sec", t.immobility_sec},
             {"timeout_multiplier", t.timeout_multiplier}};
}

void from_json(const json& j, OracleThresholds& t) {
    OracleThresholds defaults;
    t.eps_lateral = j.value("eps_lateral", defaults.eps_lateral);
    t.speed_ratio_min = j.value("speed_ratio_min", defaults.speed_ratio_min);
    t.sustain_sec = j.value("sustain_sec", defaults.sustain_sec);
    t.immobility_speed = j.value("immobility_speed", defaults.immobility_speed);
    t.immobility_sec = j.value("immobility_sec", defaults.immobility_sec);
    t.timeout_multiplier = j.value("timeout_multiplier", defaults.timeout_multiplier);
}

void to_json(json& j, const DeviationMetrics& m) {
    j = json{{"max_lateral", m.max_lateral},
             {"min_speed_ratio", m.min_speed_ratio},
             {"immobile_sec", m.immobile_sec},
             {"goal_reached", m.goal_reached},
             {"completion_ratio", m.completion_ratio}};
}

void from_json(const json& j, DeviationMetrics& m) {
    j.at("max_lateral").get_to(m.max_lateral);
    j.at("min_speed_ratio").get_to(m.min_speed_ratio);
    j.at("immobile_sec").get_to(m.immobile_sec);
    j.at("goal_reached").get_to(m.goal_reached);
    j.at("completion_ratio").get_to(m.completion_ratio);
}

}  // namespace fuzzsense::oracle

namespace fuzzsense::mutator {

void to_json(json& j, const GridAxis& a) {
    j = json{{"name", a.name}, {"values", a.values}};
}

void from_json(const json& j, GridAxis& a) {
    j.at("name").get_to(a.name);
    j.at("values").get_to(a.values);
}

}  // namespace fuzzsense::mutator

namespace fuzzsense::worldsim {

void to_json(json& j, const LidarSpec& s) {
    j = json{{"ring_count", s.ring_count},
             {"min_elev_deg", s.min_elev_deg},
             {"max_elev_deg", s.max_elev_deg},
             {"azimuth_step_deg", s.azimuth_step_deg},
             {"max_range", s.max_range},
             {"mount_height", s.mount_height}};
}

void from_json(const json& j, LidarSpec& s) {
    LidarSpec defaults;
    s.ring_count = j.value("ring_count", defaults.ring_count);
    s.min_elev_deg = j.value("min_elev_deg", defaults.min_elev_deg);
    s.max_elev_deg = j.value("max_elev_deg", defaults.max_elev_deg);
    s.azimuth_step_deg = j.value("azimuth_step_deg", defaults.azimuth_step_deg);
    s.max_range = j.value("max_range", defaults.max_range);
    s.mount_height = j.value("mount_height", defaults.mount_height);
}

void to_json(json& j, const CameraSpec& s) {
    j = json{{"width", s.width}, {"height", s.height}};
}

void from_json(const json& j, CameraSpec& s) {
    CameraSpec defaults;
    s.width = j.value("width", defaults.width);
    s.height = j.value("height", defaults.height);
}

void to_json(json& j, const PerceptionParams& p) {
    j = json{{"ground_height", p.ground_height},
             {"cluster_gap", p.cluster_gap},
             {"min_cluster_size", p.min_cluster_size},
             {"min_ahead", p.min_ahead}};
}

void from_json(const json& j, PerceptionParams& p) {
    PerceptionParams defaults;
    p.ground_height = j.value("ground_height", defaults.ground_height);
    p.cluster_gap = j.value("cluster_gap", defaults.cluster_gap);
    p.min_cluster_size = j.value("min_cluster_size", defaults.min_cluster_size);
    p.min_ahead = j.value("min_ahead", defaults.min_ahead);
}

void to_json(json& j, const PlannerParams& p) {
    j = json{{"d_slow", p.d_slow},
             {"d_stop", p.d_stop},
             {"lookahead", p.lookahead},
             {"accel_gain", p.accel_gain}};
}

void from_json(const json& j, PlannerParams& p) {
    PlannerParams defaults;
    p.d_slow = j.value("d_slow", defaults.d_slow);
    p.d_stop = j.value("d_stop", defaults.d_stop);
    p.lookahead = j.value("lookahead", defaults.lookahead);
    p.accel_gain = j.value("accel_gain", defaults.accel_gain);
}

}  // namespace fuzzsense::worldsim

namespace fuzzsense::orchestrator {

void to_json(json& j, const StopConditions& s) {
    j = json{{"max_iterations", s.max_iterations},
             {"wall_budget_sec", s.wall_budget_sec},
             {"stop_on_first_finding", s.stop_on_first_finding}};
}

void from_json(const json& j, StopConditions& s) {
    StopConditions defaults;
    s.max_iterations = j.value("max_iterations", defaults.max_iterations);
    s.wall_budget_sec = j.value("wall_budget_sec", defaults.wall_budget_sec);
    s.stop_on_first_finding = j.value("stop_on_first_finding", defaults.stop_on_first_finding);
}

void to_json(json& j, const CampaignConfig& c) {
    j = json{{"master_seed", c.master_seed},
             {"stop", c.stop},
             {"thresholds", c.thresholds},
             {"scenario_seed", c.scenario_seed},
             {"scenario_grid", c.scenario_grid},
             {"sensor_seed", c.sensor_seed},
             {"sensor_grid", c.sensor_grid},
             {"target_stream", c.target_stream},
             {"lidar", c.lidar},
             {"camera", c.camera},
             {"perception", c.perception},
             {"planner", c.planner},
             {"plane_cell_size", c.plane.cell_size},
             {"transport", c.transport}};
}

void from_json(const json& j, CampaignConfig& c) {
    CampaignConfig defaults;
    c.master_seed = j.value("master_seed", defaults.master_seed);
    c.stop = j.value("stop", defaults.stop);
    c.thresholds = j.value("thresholds", defaults.thresholds);
    j.at("scenario_seed").get_to(c.scenario_seed);
    c.scenario_grid = j.value("scenario_grid", defaults.scenario_grid);
    j.at("sensor_seed").get_to(c.sensor_seed);
    c.sensor_grid = j.value("sensor_grid", defaults.sensor_grid);
    c.target_stream = j.value("target_stream", defaults.target_stream);
    c.lidar = j.value("lidar", defaults.lidar);
    c.camera = j.value("camera", defaults.camera);
    c.perception = j.value("perception", defaults.perception);
    c.planner = j.value("planner", defaults.planner);
    c.plane.cell_size = j.value("plane_cell_size", defaults.plane.cell_size);
    c.transport = j.value("transport", defaults.transport);
}

void to_json(json& j, const IterationRecord& r) {
    j = json{{"id", r.id.str()},
             {"scenario_params", r.scenario_params},
             {"sensor_params", r.sensor_params},
             {"mask_digest", r.mask_digest},
             {"rng_seed", r.rng_seed},
             {"outcome", r.outcome},
             {"finding_kinds", r.finding_kinds},
             {"metrics", r.metrics},
             {"frames_processed", r.frames_processed},
             {"trajectory_len", r.trajectory_len},
             {"wall", r.wall}};
}

void from_json(const json& j, IterationRecord& r) {
    r.id = IterationId::parse(j.at("id").get<std::string>());
    j.at("scenario_params").get_to(r.scenario_params);
    j.at("sensor_params").get_to(r.sensor_params);
    j.at("mask_digest").get_to(r.mask_digest);
    j.at("rng_seed").get_to(r.rng_seed);
    j.at("outcome").get_to(r.outcome);
    j.at("finding_kinds").get_to(r.finding_kinds);
    j.at("metrics").get_to(r.metrics);
    j.at("frames_processed").get_to(r.frames_processed);
    j.at("trajectory_len").get_to(r.trajectory_len);
    r.wall = j.value("wall", std::string{});
}

}  // namespace fuzzsense::orchestrator
