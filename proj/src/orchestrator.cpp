#include "fuzzsense/orchestrator.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include "fuzzsense/maskgen.hpp"
#include "fuzzsense/mutator.hpp"

namespace fuzzsense::orchestrator {

namespace {

constexpr double kGoalTolerance = 2.0;  // meters

bool goal_reached(const worldsim::EgoState& ego, const ScenarioParams& scenario) {
    return std::hypot(ego.x - scenario.goal_x, ego.y - scenario.goal_y) <= kGoalTolerance;
}

std::string wall_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

double unfuzzed_timeout_sec(const ScenarioParams& scenario) {
    const worldsim::RoutePath route = worldsim::make_route(scenario.route_id);
    return 3.0 * route.length() / scenario.target_speed + 15.0;
}

Orchestrator::Orchestrator(CampaignConfig config, repository::CampaignStore* store)
    : config_(std::move(config)), store_(store) {
    ValidationResult v = validate_config(config_);
    if (!v.ok()) throw ConfigError("invalid campaign config: " + v.violations.front());

    sensor_meta_ = SensorMeta{config_.target_stream, StreamKind::lidar, config_.lidar.max_range};

    const maskgen::SensorPose lidar_pose{0.0, 0.0, config_.lidar.mount_height, 0.0};
    broker_.register_plugin(std::make_shared<maskgen::LidarFuzzerPlugin>(
        config_.target_stream, config_.plane, lidar_pose, config_.lidar.ring_elevations_rad()));
    broker_.register_plugin(std::make_shared<maskgen::CameraFuzzerPlugin>("camera0"));

    if (config_.transport == "socket") {
        socket_server_ = std::make_unique<broker::BrokerSocketServer>(broker_);
        socket_client_ =
            std::make_unique<broker::FramedClient>("127.0.0.1", socket_server_->port());
    }
}

broker::BrokerMessage Orchestrator::send_lifecycle(broker::LifecycleVerb verb) {
    if (socket_client_ == nullptr) return broker_.lifecycle(verb);
    broker::BrokerMessage cmd;
    cmd.type = broker::MessageType::cmd;
    cmd.payload = verb;
    broker::BrokerMessage reply = socket_client_->request(cmd);
    const auto& ack = std::get<broker::AckPayload>(reply.payload);
    if (!ack.ok) throw broker::LifecycleError("lifecycle rejected: " + ack.detail);
    return reply;
}

std::optional<broker::BrokerMessage> Orchestrator::send_sensor(const broker::BrokerMessage& msg) {
    if (socket_client_ == nullptr) return broker_.process_sensor_frame(msg);
    broker::BrokerMessage reply = socket_client_->request(msg);
    if (reply.type == broker::MessageType::ack) return std::nullopt;  // dropped
    return reply;
}

void Orchestrator::send_control(const ControlCommand& cmd) {
    if (socket_client_ == nullptr) {
        broker_.forward_control(cmd);
        return;
    }
    broker::BrokerMessage msg;
    msg.type = broker::MessageType::control;
    msg.payload = cmd;
    socket_client_->request(msg);
}

oracle::RunResult Orchestrator::execute_run(const ScenarioParams& scenario,
                                            const std::optional<SensorFuzzParams>& armed_params,
                                            std::shared_ptr<const FuzzingMask> mask,
                                            double timeout_sec,
                                            std::int64_t* frames_processed) {
    worldsim::World world(scenario, config_.lidar, config_.camera);
    const worldsim::ReferenceAds ads(&world.route(), scenario.target_speed, config_.perception,
                                     config_.planner);

    send_lifecycle(broker::LifecycleVerb::reset);
    broker_.disarm_all();
    if (armed_params.has_value()) {
        broker_.arm(armed_params->stream_id, std::move(mask), *armed_params);
        broker_.set_fuzzing_enabled(true);
    } else {
        broker_.set_fuzzing_enabled(false);
    }
    send_lifecycle(broker::LifecycleVerb::start);

    ControlCommand control;
    broker_.set_control_sink([&control](const ControlCommand& cmd) { control = cmd; });

    oracle::RunResult result;
    const auto timeout_ms = static_cast<std::int64_t>(std::llround(timeout_sec * 1000.0));

    while (true) {
        const worldsim::StepOutput out = world.step(control);

        auto cloud_msg = send_sensor(broker::make_sensor_message(config_.target_stream, out.cloud));
        send_sensor(broker::make_sensor_message("camera0", out.camera));
        if (!cloud_msg.has_value()) {
            throw InfrastructureError("sensor frame dropped by broker during run");
        }

        const auto& fuzzed_cloud = std::get<PointCloud>(cloud_msg->payload);
        send_control(ads.tick(fuzzed_cloud, out.ego));

        result.trajectory.push_back(
            TrajectoryRecord{out.sim_time_ms, out.ego.x, out.ego.y, out.ego.yaw, out.ego.speed});

        if (out.collision) {
            result.events.collision = true;
            break;
        }
        if (goal_reached(out.ego, scenario)) {
            result.goal_reached = true;
            break;
        }
        if (out.sim_time_ms >= timeout_ms) {
            result.events.timeout = true;
            break;
        }
    }

    if (frames_processed != nullptr) *frames_processed = broker_.processed_frames();
    send_lifecycle(broker::LifecycleVerb::stop);
    return result;
}

IterationRecord Orchestrator::run_sensor_iteration(const ScenarioParams& scenario,
                                                   const SensorFuzzParams& params,
                                                   const oracle::GoldenRun& golden, IterationId id,
                                                   std::vector<Finding>& findings_out) {
    IterationRecord record;
    record.id = id;
    record.wall = wall_timestamp();
    record.scenario_params = scenario;
    record.sensor_params = params;
    record.rng_seed = derive_seed(config_.master_seed, id.scenario_index, id.sensor_index);

    auto mask = std::make_shared<const FuzzingMask>(maskgen::generate_mask(params, record.rng_seed));
    record.mask_digest = mask_digest(*mask);

    const double timeout_sec = golden.duration_sec * config_.thresholds.timeout_multiplier;
    std::int64_t frames = 0;
    oracle::RunResult run;
    try {
        run = execute_run(scenario, params, mask, timeout_sec, &frames);
    } catch (const InfrastructureError&) {
        record.outcome = "failed";
        return record;
    }
    record.frames_processed = frames;
    record.trajectory_len = static_cast<std::int64_t>(run.trajectory.size());

    record.metrics = oracle::compute_metrics(golden, run.trajectory, run.goal_reached,
                                             config_.thresholds.sustain_sec,
                                             config_.thresholds.immobility_speed);
    const oracle::FindingContext context{params, scenario, id.str()};
    std::vector<Finding> findings =
        oracle::evaluate(record.metrics, config_.thresholds, run.events, context);

    record.outcome = findings.empty() ? "finished" : "finding";
    for (const auto& f : findings) record.finding_kinds.emplace_back(to_string(f.kind));
    findings_out = std::move(findings);
    return record;
}

CampaignReport Orchestrator::run_campaign() {
    if (store_ == nullptr) throw ConfigError("run_campaign requires a campaign store");
    CampaignReport report;
    const auto wall_start = std::chrono::steady_clock::now();
    auto wall_exceeded = [&]() {
        if (config_.stop.wall_budget_sec <= 0) return false;
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - wall_start;
        return elapsed.count() >= config_.stop.wall_budget_sec;
    };

    mutator::ScenarioCursor scenario_cursor(
        config_.scenario_seed, config_.scenario_grid,
        [](const ScenarioParams& s) { return worldsim::validate_scenario(s).ok(); });

    int total_iterations = 0;
    int scenario_index = 0;
    bool stopping = false;

    while (!stopping) {
        // Step 1: mutate scenario parameters
        const std::optional<ScenarioParams> scenario = scenario_cursor.next();
        if (!scenario.has_value()) {
            report.stop_reason = "exhausted";
            break;
        }
        // Step 2: set the scenario up in sim and ADS
        store_->append_event("ScenarioSetup " + std::to_string(scenario_index));

        // Step 3: golden run with fuzzing disabled
        oracle::GoldenRun golden;
        try {
            golden = oracle::create_golden_run(*scenario, [this](const ScenarioParams& s) {
                return execute_run(s, std::nullopt, nullptr, unfuzzed_timeout_sec(s));
            });
        } catch (const oracle::ScenarioInvalid&) {
            store_->append_event("ScenarioInvalid " + std::to_string(scenario_index));
            ++scenario_index;
            continue;
        }
        store_->persist_golden(scenario_index, golden);
        store_->append_event("GoldenRun " + std::to_string(scenario_index));

        // Step 4: sensor fuzzing iterations; the seed is the first vector
        auto [first_params, sensor_cursor] =
            mutator::init_from_seed(config_.sensor_seed, config_.sensor_grid, sensor_meta_);

        int sensor_index = 0;
        std::optional<SensorFuzzParams> params = first_params;
        while (params.has_value()) {
            const IterationId id{0, scenario_index, sensor_index};
            std::vector<Finding> findings;
            IterationRecord record = run_sensor_iteration(*scenario, *params, golden, id, findings);

            store_->persist_iteration(record);
            store_->append_event("SensorIteration " + id.str());
            for (const auto& f : findings) store_->persist_finding(f);
            report.iterations.push_back(record);
            report.findings.insert(report.findings.end(), findings.begin(), findings.end());
            ++total_iterations;
            ++sensor_index;

            if (record.outcome == "failed") {
                report.stop_reason = "aborted";
                stopping = true;
                break;
            }
            if (config_.stop.stop_on_first_finding && !findings.empty()) {
                report.stop_reason = "first_finding";
                stopping = true;
                break;
            }
            if (config_.stop.max_iterations > 0 && total_iterations >= config_.stop.max_iterations) {
                report.stop_reason = "max_iterations";
                stopping = true;
                break;
            }
            if (wall_exceeded()) {
                report.stop_reason = "wall_budget";
                stopping = true;
                break;
            }
            params = sensor_cursor.next();
        }
        ++scenario_index;
    }

    store_->close();
    return report;
}

std::vector<std::string> replay_iteration(const CampaignConfig& config,
                                          const repository::ReplayInputs& inputs) {
    CampaignConfig replay_config = config;
    replay_config.scenario_seed = inputs.scenario;
    replay_config.sensor_seed = inputs.sensor;

    // in-memory store stand-in: replay never persists
    Orchestrator orchestrator(replay_config, nullptr);

    oracle::GoldenRun golden =
        oracle::create_golden_run(inputs.scenario, [&orchestrator](const ScenarioParams& s) {
            return orchestrator.execute_run(s, std::nullopt, nullptr, unfuzzed_timeout_sec(s));
        });

    auto mask =
        std::make_shared<const FuzzingMask>(maskgen::generate_mask(inputs.sensor, inputs.rng_seed));
    const double timeout_sec = golden.duration_sec * replay_config.thresholds.timeout_multiplier;
    const oracle::RunResult run =
        orchestrator.execute_run(inputs.scenario, inputs.sensor, mask, timeout_sec);

    const oracle::DeviationMetrics metrics =
        oracle::compute_metrics(golden, run.trajectory, run.goal_reached,
                                replay_config.thresholds.sustain_sec,
                                replay_config.thresholds.immobility_speed);
    const oracle::FindingContext context{inputs.sensor, inputs.scenario, "replay"};
    std::vector<std::string> kinds;
    for (const auto& f :
         oracle::evaluate(metrics, replay_config.thresholds, run.events, context)) {
        kinds.emplace_back(to_string(f.kind));
    }
    return kinds;
}

}  // namespace fuzzsense::orchestrator
