#include <doctest.h>

#include <memory>
#include <vector>

#include "fuzzsense/broker.hpp"
#include "test_helpers.hpp"

using namespace fuzzsense;
using namespace fuzzsense::broker;
using testing::reference_sensor_params;

namespace {

PointCloud sample_cloud(std::int64_t frame_id = 1, std::int64_t sim_time_ms = 33) {
    PointCloud cloud;
    cloud.frame_id = frame_id;
    cloud.sim_time_ms = sim_time_ms;
    for (int i = 0; i < 20; ++i) {
        cloud.points.push_back({static_cast<float>(i), 0.5f, 1.0f, 0.8f, i % 4});
    }
    return cloud;
}

Broker running_broker() {
    Broker broker;
    broker.register_plugin(
        std::make_shared<maskgen::LidarFuzzerPlugin>("lidar0", maskgen::PlaneSpec{},
                                                     maskgen::SensorPose{}, std::vector<double>{}));
    broker.register_plugin(std::make_shared<maskgen::CameraFuzzerPlugin>("camera0"));
    broker.lifecycle(LifecycleVerb::start);
    return broker;
}

}  // namespace

TEST_SUITE("broker") {

TEST_CASE("fuzzing disabled: sensor frames pass through bit-identical") {
    auto broker = running_broker();
    const auto msg = make_sensor_message("lidar0", sample_cloud());
    const auto out = broker.process_sensor_frame(msg);
    REQUIRE(out.has_value());
    CHECK(*out == msg);
    CHECK(broker.processed_frames() == 1);
    CHECK(broker.dropped_frames() == 0);
}

TEST_CASE("armed plug-in injects points without touching the originals") {
    auto broker = running_broker();
    const auto params = reference_sensor_params();
    const auto mask = std::make_shared<FuzzingMask>(maskgen::generate_mask(params, 11));
    broker.arm("lidar0", mask, params);
    broker.set_fuzzing_enabled(true);

    const auto msg = make_sensor_message("lidar0", sample_cloud());
    const auto out = broker.process_sensor_frame(msg);
    REQUIRE(out.has_value());
    const auto& in_cloud = std::get<PointCloud>(msg.payload);
    const auto& out_cloud = std::get<PointCloud>(out->payload);
    REQUIRE(out_cloud.points.size() == in_cloud.points.size() + mask->effective_count());
    for (std::size_t i = 0; i < in_cloud.points.size(); ++i) {
        CHECK(out_cloud.points[i] == in_cloud.points[i]);
    }
    CHECK(out->frame_id == msg.frame_id);
    CHECK(out->sim_time_ms == msg.sim_time_ms);
}

TEST_CASE("the armed mask object is referentially constant across frames") {
    auto broker = running_broker();
    const auto params = reference_sensor_params();
    const auto mask = std::make_shared<FuzzingMask>(maskgen::generate_mask(params, 4));
    broker.arm("lidar0", mask, params);
    broker.set_fuzzing_enabled(true);

    std::optional<BrokerMessage> first;
    for (int i = 0; i < 100; ++i) {
        CHECK(broker.armed_mask("lidar0").get() == mask.get());
        const auto out =
            broker.process_sensor_frame(make_sensor_message("lidar0", sample_cloud(i, i * 33)));
        REQUIRE(out.has_value());
        if (!first) {
            first = out;
        } else {
            // identical input frame content -> identical fuzzed output
            auto expected = std::get<PointCloud>(first->payload);
            expected.frame_id = i;
            expected.sim_time_ms = i * 33;
            auto got = std::get<PointCloud>(out->payload);
            CHECK(got == expected);
        }
    }
    broker.disarm_all();
    CHECK(broker.armed_mask("lidar0") == nullptr);
}

TEST_CASE("disarmed or disabled fuzzing leaves frames untouched even with plug-ins") {
    auto broker = running_broker();
    const auto params = reference_sensor_params();
    broker.arm("lidar0", std::make_shared<FuzzingMask>(maskgen::generate_mask(params, 2)),
               params);
    // armed but not enabled
    const auto msg = make_sensor_message("lidar0", sample_cloud());
    CHECK(*broker.process_sensor_frame(msg) == msg);

    broker.set_fuzzing_enabled(true);
    broker.disarm_all();
    CHECK(*broker.process_sensor_frame(msg) == msg);
}

TEST_CASE("unknown streams are routed unmodified and counted") {
    auto broker = running_broker();
    const auto msg = make_sensor_message("radar9", sample_cloud());
    const auto out = broker.process_sensor_frame(msg);
    REQUIRE(out.has_value());
    CHECK(*out == msg);
    CHECK(broker.unknown_stream_frames() == 1);
}

TEST_CASE("malformed camera payloads are dropped and counted") {
    auto broker = running_broker();
    CameraFrame bad;
    bad.width = 10;
    bad.height = 10;
    bad.pixels.assign(17, 0);  // wrong buffer size
    CHECK(broker.process_sensor_frame(make_sensor_message("camera0", bad)) == std::nullopt);
    CHECK(broker.dropped_frames() == 1);
    CHECK(broker.processed_frames() == 0);
}

TEST_CASE("sensor frames with regressing timestamps are dropped") {
    auto broker = running_broker();
    CHECK(broker.process_sensor_frame(make_sensor_message("lidar0", sample_cloud(1, 66)))
              .has_value());
    CHECK(broker.process_sensor_frame(make_sensor_message("lidar0", sample_cloud(2, 33))) ==
          std::nullopt);
    CHECK(broker.dropped_frames() == 1);
    // other streams keep their own clock
    CHECK(broker.process_sensor_frame(make_sensor_message("camera0", sample_cloud(1, 33)))
              .has_value());
}

TEST_CASE("control commands are forwarded unmodified, in order") {
    auto broker = running_broker();
    std::vector<ControlCommand> received;
    broker.set_control_sink([&](const ControlCommand& cmd) { received.push_back(cmd); });
    const std::vector<ControlCommand> sent{{0.1, 1.0}, {-0.2, -3.0}, {0.0, 0.0}};
    for (const auto& cmd : sent) broker.forward_control(cmd);
    CHECK(received == sent);
    CHECK(broker.forwarded_controls() == 3);
}

TEST_CASE("lifecycle verbs fan out to both endpoints and ack") {
    Broker broker;
    std::vector<LifecycleVerb> sim_log, ads_log;
    broker.set_sim_lifecycle([&](LifecycleVerb v) { sim_log.push_back(v); });
    broker.set_ads_lifecycle([&](LifecycleVerb v) { ads_log.push_back(v); });

    const auto ack = broker.lifecycle(LifecycleVerb::start);
    CHECK(ack.type == MessageType::ack);
    CHECK(std::get<AckPayload>(ack.payload).ok);
    CHECK(sim_log == std::vector<LifecycleVerb>{LifecycleVerb::start});
    CHECK(ads_log == sim_log);

    broker.lifecycle(LifecycleVerb::stop);
    CHECK(broker.state() == BrokerState::stopped);
}

TEST_CASE("illegal lifecycle transitions throw") {
    Broker broker;
    CHECK_THROWS_AS(broker.lifecycle(LifecycleVerb::stop), LifecycleError);
    broker.lifecycle(LifecycleVerb::start);
    CHECK_THROWS_AS(broker.lifecycle(LifecycleVerb::start), LifecycleError);
    broker.lifecycle(LifecycleVerb::reset);  // reset is legal from any state
    CHECK(broker.state() == BrokerState::stopped);
}

TEST_CASE("sensor and control traffic require a running broker") {
    Broker broker;
    CHECK_THROWS_AS(broker.process_sensor_frame(make_sensor_message("lidar0", sample_cloud())),
                    LifecycleError);
    CHECK_THROWS_AS(broker.forward_control({}), LifecycleError);
}

TEST_CASE("reset clears counters and per-stream clocks") {
    auto broker = running_broker();
    broker.process_sensor_frame(make_sensor_message("lidar0", sample_cloud(1, 66)));
    broker.forward_control({});
    broker.lifecycle(LifecycleVerb::reset);
    CHECK(broker.processed_frames() == 0);
    CHECK(broker.forwarded_controls() == 0);

    broker.lifecycle(LifecycleVerb::start);
    // earlier timestamp is accepted again after reset
    CHECK(broker.process_sensor_frame(make_sensor_message("lidar0", sample_cloud(1, 33)))
              .has_value());
}

}  // TEST_SUITE
