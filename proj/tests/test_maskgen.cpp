#include <doctest.h>

#include <cmath>
#include <set>

#include "fuzzsense/maskgen.hpp"
#include "test_helpers.hpp"

using namespace fuzzsense;
using testing::reference_sensor_params;

TEST_SUITE("maskgen") {

TEST_CASE("zero change ratio yields an empty mask") {
    auto p = reference_sensor_params();
    p.change_ratio = 0.0;
    const auto mask = maskgen::generate_mask(p, 1);
    CHECK(mask.effective_count() == 0);
}

TEST_CASE("zero dispersion collapses all samples onto the mean cell") {
    auto p = reference_sensor_params();
    p.dispersion = 0.0;
    const auto mask = maskgen::generate_mask(p, 7);
    REQUIRE(mask.effective_count() == 1);
    CHECK(*mask.coords.begin() == std::pair<int, int>{40, 30});
}

TEST_CASE("mask generation is a pure function of params and seed") {
    const auto p = reference_sensor_params();
    CHECK(maskgen::generate_mask(p, 123) == maskgen::generate_mask(p, 123));
    CHECK(maskgen::generate_mask(p, 123) != maskgen::generate_mask(p, 124));
}

TEST_CASE("coordinate count and bounds hold for arbitrary seeds") {
    const auto p = reference_sensor_params();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto mask = maskgen::generate_mask(p, seed);
        CHECK(mask.effective_count() <= static_cast<std::size_t>(changed_cell_target(p)));
        for (const auto& [x, y] : mask.coords) {
            CHECK(x >= 0);
            CHECK(x <= p.mask_width);
            CHECK(y >= 0);
            CHECK(y <= p.mask_height);
        }
    }
}

TEST_CASE("pre-clamp sample statistics match the requested normal") {
    // Monte-Carlo oracle: regenerate many masks and pool the raw samples.
    auto p = reference_sensor_params();
    p.change_ratio = 0.1;  // 600 samples per mask
    double sum = 0.0, sum_sq = 0.0;
    std::size_t n = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        for (const auto& [x, y] : maskgen::draw_samples(p, seed)) {
            sum += x;
            sum_sq += x * x;
            ++n;
        }
    }
    const double mean = sum / static_cast<double>(n);
    const double stddev = std::sqrt(sum_sq / static_cast<double>(n) - mean * mean);
    CHECK(mean == doctest::Approx(40.0).epsilon(0.02));
    CHECK(stddev == doctest::Approx(10.0).epsilon(0.10));
}

TEST_CASE("invalid params raise a parameter error") {
    auto p = reference_sensor_params();
    p.change_ratio = -1.0;
    CHECK_THROWS_AS(maskgen::generate_mask(p, 0), maskgen::ParameterError);
}

TEST_CASE("camera: empty mask leaves the frame bit-identical") {
    CameraFrame frame;
    frame.width = 100;
    frame.height = 60;
    frame.pixels.assign(6000, 17);
    FuzzingMask mask{100, 60, {}};
    CHECK(maskgen::apply_camera(frame, mask, reference_sensor_params()) == frame);
}

TEST_CASE("camera: single masked pixel at full intensity") {
    CameraFrame frame;
    frame.width = 100;
    frame.height = 60;
    frame.pixels.assign(6000, 0);
    FuzzingMask mask{100, 60, {{0, 0}}};
    auto p = reference_sensor_params();
    p.intensity = 1.0;
    const auto out = maskgen::apply_camera(frame, mask, p);
    CHECK(out.pixels[0] == 255);
    CHECK(std::count(out.pixels.begin(), out.pixels.end(), 0) == 5999);
    CHECK(out.frame_id == frame.frame_id);
    CHECK(out.sim_time_ms == frame.sim_time_ms);
}

TEST_CASE("camera: exactly effective_count pixels change, all to round(I*255)") {
    CameraFrame frame;
    frame.width = 100;
    frame.height = 60;
    frame.pixels.assign(6000, 200);
    const auto p = reference_sensor_params();  // I = 0.1 -> 26
    const auto mask = maskgen::generate_mask(p, 99);
    const auto out = maskgen::apply_camera(frame, mask, p);

    // exhaustive buffer diff
    std::size_t changed = 0;
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
        if (out.pixels[i] != frame.pixels[i]) {
            ++changed;
            CHECK(out.pixels[i] == 26);
        }
    }
    // cells on the x=W or y=H boundary fall outside the pixel raster
    std::size_t in_raster = 0;
    for (const auto& [x, y] : mask.coords) {
        if (x < frame.width && y < frame.height) ++in_raster;
    }
    CHECK(changed == in_raster);
}

TEST_CASE("camera: dimension mismatch is a configuration error") {
    CameraFrame frame;
    frame.width = 10;
    frame.height = 10;
    frame.pixels.assign(100, 0);
    FuzzingMask mask{100, 60, {{1, 1}}};
    CHECK_THROWS_AS(maskgen::apply_camera(frame, mask, reference_sensor_params()),
                    maskgen::ConfigurationError);
}

TEST_CASE("lidar: boresight cell maps to the plane center") {
    PointCloud cloud;
    auto p = reference_sensor_params();
    FuzzingMask mask{p.mask_width, p.mask_height, {{50, 30}}};
    const maskgen::SensorPose origin{};
    const auto out = maskgen::project_and_inject_lidar(cloud, mask, p, {}, origin);
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0].x == doctest::Approx(30.0));
    CHECK(out.points[0].y == doctest::Approx(0.0));
    CHECK(out.points[0].z == doctest::Approx(0.0));
    CHECK(out.points[0].intensity == doctest::Approx(0.1f));
}

TEST_CASE("lidar: empty mask returns the cloud unchanged") {
    PointCloud cloud;
    cloud.points.push_back({1, 2, 3, 0.5f, 4});
    FuzzingMask mask{100, 60, {}};
    CHECK(maskgen::project_and_inject_lidar(cloud, mask, reference_sensor_params(), {}, {}) ==
          cloud);
}

TEST_CASE("lidar: original points untouched, order preserved, count adds up") {
    PointCloud cloud;
    for (int i = 0; i < 50; ++i) {
        cloud.points.push_back({static_cast<float>(i), 1.0f, 0.5f, 0.9f, i % 16});
    }
    const auto p = reference_sensor_params();
    const auto mask = maskgen::generate_mask(p, 5);
    const auto out = maskgen::project_and_inject_lidar(cloud, mask, p, {}, {});
    REQUIRE(out.points.size() == cloud.points.size() + mask.effective_count());
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        CHECK(out.points[i] == cloud.points[i]);
    }
}

TEST_CASE("lidar: full plane spans 10 m x 6 m with no mutual shadowing") {
    auto p = reference_sensor_params();
    FuzzingMask mask{100, 60, {}};
    for (int x = 0; x <= 100; ++x) {
        for (int y = 0; y <= 60; ++y) mask.coords.emplace(x, y);
    }
    const maskgen::SensorPose pose{0, 0, 1.8, 0};
    const auto out = maskgen::project_and_inject_lidar({}, mask, p, {}, pose);

    float min_y = 1e9f, max_y = -1e9f, min_z = 1e9f, max_z = -1e9f;
    for (const auto& pt : out.points) {
        min_y = std::min(min_y, pt.y);
        max_y = std::max(max_y, pt.y);
        min_z = std::min(min_z, pt.z);
        max_z = std::max(max_z, pt.z);
        CHECK(pt.x == doctest::Approx(30.0f));
    }
    CHECK(max_y - min_y == doctest::Approx(10.0f));
    CHECK(max_z - min_z == doctest::Approx(6.0f));

    // pairwise-distinct ray directions from the sensor origin: all points sit
    // on one perpendicular plane, so normalized directions must differ
    std::set<std::pair<double, double>> directions;
    for (const auto& pt : out.points) {
        const double dx = pt.x - pose.x, dy = pt.y - pose.y, dz = pt.z - pose.z;
        const double norm = std::sqrt(dx * dx + dy * dy + dz * dz);
        directions.emplace(dy / norm, dz / norm);
    }
    CHECK(directions.size() == out.points.size());
}

TEST_CASE("lidar: injected points get the nearest elevation ring") {
    auto p = reference_sensor_params();
    const std::vector<double> rings = {-0.1, 0.0, 0.1};
    const maskgen::SensorPose pose{};
    FuzzingMask boresight{100, 60, {{50, 30}}};
    auto out = maskgen::project_and_inject_lidar({}, boresight, p, {}, pose, rings);
    CHECK(out.points[0].ring == 1);

    FuzzingMask top{100, 60, {{50, 0}}};  // 3 m above boresight at 30 m -> ~0.0997 rad
    out = maskgen::project_and_inject_lidar({}, top, p, {}, pose, rings);
    CHECK(out.points[0].ring == 2);
}

TEST_CASE("plugins dispatch to the matching payload type") {
    const auto p = reference_sensor_params();
    const auto mask = maskgen::generate_mask(p, 3);

    maskgen::LidarFuzzerPlugin lidar("lidar0", {}, {}, {});
    PointCloud cloud;
    const auto fuzzed = lidar.apply(maskgen::SensorPayload{cloud}, mask, p);
    CHECK(std::get<PointCloud>(fuzzed).points.size() == mask.effective_count());

    CameraFrame frame;
    CHECK_THROWS_AS(lidar.apply(maskgen::SensorPayload{frame}, mask, p),
                    maskgen::ConfigurationError);
}

}  // TEST_SUITE
