#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fuzzsense/oracle.hpp"
#include "test_helpers.hpp"

using namespace fuzzsense;
using namespace fuzzsense::oracle;

namespace {

/// Straight-line trajectory along x at constant speed, sampled every 100 ms.
std::vector<TrajectoryRecord> straight_trace(double speed, double duration_sec,
                                             double lateral = 0.0) {
    std::vector<TrajectoryRecord> trace;
    for (std::int64_t t_ms = 0; t_ms <= static_cast<std::int64_t>(duration_sec * 1000);
         t_ms += 100) {
        const double t = static_cast<double>(t_ms) / 1000.0;
        trace.push_back({t_ms, speed * t, lateral, 0.0, speed});
    }
    return trace;
}

GoldenRun golden_from(std::vector<TrajectoryRecord> trace) {
    GoldenRun g;
    g.scenario = fuzzsense::testing::straight_scenario();
    g.duration_sec = static_cast<double>(trace.back().sim_time_ms) / 1000.0;
    g.trajectory = std::move(trace);
    g.goal_reached = true;
    return g;
}

/// Quadratic-time reference for the sustained speed-ratio metric.
double brute_force_min_sustained_ratio(const std::vector<TrajectoryRecord>& observed,
                                       const std::vector<double>& ratio,
                                       std::int64_t sustain_ms) {
    double result = 1.0;
    for (std::size_t begin = 0; begin < observed.size(); ++begin) {
        double window_max = 0.0;
        bool full = false;
        for (std::size_t i = begin; i < observed.size(); ++i) {
            if (observed[i].sim_time_ms - observed[begin].sim_time_ms > sustain_ms) {
                full = true;
                break;
            }
            window_max = std::max(window_max, ratio[i]);
            if (observed[i].sim_time_ms - observed[begin].sim_time_ms >= sustain_ms) full = true;
        }
        if (full) result = std::min(result, window_max);
    }
    return result;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("a run compared against itself has null metrics and no findings") {
    const auto golden = golden_from(straight_trace(8.0, 10.0));
    const auto metrics = compute_metrics(golden, golden.trajectory, true);
    CHECK(metrics.max_lateral == doctest::Approx(0.0));
    CHECK(metrics.min_speed_ratio == doctest::Approx(1.0));
    CHECK(metrics.immobile_sec == doctest::Approx(0.0));
    CHECK(metrics.completion_ratio == doctest::Approx(1.0));
    CHECK(evaluate(metrics, {}, {}, {}).empty());
}

TEST_CASE("halved speed yields a sustained ratio of one half") {
    const auto golden = golden_from(straight_trace(8.0, 10.0));
    const auto observed = straight_trace(4.0, 10.0);
    const auto metrics = compute_metrics(golden, observed, false);
    CHECK(metrics.min_speed_ratio == doctest::Approx(0.5));
    CHECK(metrics.max_lateral == doctest::Approx(0.0));

    const auto findings = evaluate(metrics, {}, {}, {});
    REQUIRE(findings.size() == 1);
    CHECK(findings.front().kind == FindingKind::deceleration);
    CHECK(findings.front().evidence.min_speed_ratio == doctest::Approx(0.5));
}

TEST_CASE("sliding-window ratio matches a quadratic-time reference") {
    const auto golden = golden_from(straight_trace(8.0, 10.0));
    // speed dips to 2 m/s for t in [3, 4.5) s, otherwise 8
    std::vector<TrajectoryRecord> observed;
    double x = 0.0;
    for (std::int64_t t_ms = 0; t_ms <= 10000; t_ms += 100) {
        const double speed = (t_ms >= 3000 && t_ms < 4500) ? 2.0 : 8.0;
        observed.push_back({t_ms, x, 0.0, 0.0, speed});
        x += speed * 0.1;
    }
    std::vector<double> ratio(observed.size());
    for (std::size_t i = 0; i < observed.size(); ++i) ratio[i] = observed[i].speed / 8.0;

    const auto metrics = compute_metrics(golden, observed, true);
    CHECK(metrics.min_speed_ratio ==
          doctest::Approx(brute_force_min_sustained_ratio(observed, ratio, 1000)));
    CHECK(metrics.min_speed_ratio == doctest::Approx(0.25));  // 1.4 s fully below 8
}

TEST_CASE("a short dip does not count as sustained") {
    const auto golden = golden_from(straight_trace(8.0, 10.0));
    std::vector<TrajectoryRecord> observed;
    double x = 0.0;
    for (std::int64_t t_ms = 0; t_ms <= 10000; t_ms += 100) {
        const double speed = (t_ms >= 3000 && t_ms < 3500) ? 2.0 : 8.0;  // 0.5 s dip
        observed.push_back({t_ms, x, 0.0, 0.0, speed});
        x += speed * 0.1;
    }
    const auto metrics = compute_metrics(golden, observed, true);
    CHECK(metrics.min_speed_ratio == doctest::Approx(1.0));
}

TEST_CASE("five immobile seconds trigger the immobility finding") {
    const auto golden = golden_from(straight_trace(8.0, 10.0));
    std::vector<TrajectoryRecord> observed;
    for (std::int64_t t_ms = 0; t_ms <= 5000; t_ms += 100) {
        observed.push_back({t_ms, 0.0, 0.0, 0.0, 0.0});
    }
    const auto metrics = compute_metrics(golden, observed, false);
    CHECK(metrics.immobile_sec == doctest::Approx(5.0));

    const auto findings = evaluate(metrics, {}, {}, {});
    const auto has = [&](FindingKind k) {
        return std::any_of(findings.begin(), findings.end(),
                           [&](const Finding& f) { return f.kind == k; });
    };
    CHECK(has(FindingKind::immobility));
}

TEST_CASE("immobility is suppressed when the goal was still reached") {
    DeviationMetrics metrics;
    metrics.immobile_sec = 10.0;
    metrics.goal_reached = true;
    CHECK(evaluate(metrics, {}, {}, {}).empty());
}

TEST_CASE("lateral deviation grows monotonically with the offset") {
    const auto golden = golden_from(straight_trace(8.0, 10.0));
    double previous = -1.0;
    for (const double offset : {0.1, 0.4, 0.9, 2.0}) {
        const auto metrics =
            compute_metrics(golden, straight_trace(8.0, 10.0, offset), true);
        CHECK(metrics.max_lateral == doctest::Approx(offset));
        CHECK(metrics.max_lateral > previous);
        previous = metrics.max_lateral;
    }
    const auto deviant = compute_metrics(golden, straight_trace(8.0, 10.0, 0.9), true);
    const auto findings = evaluate(deviant, {}, {}, {});
    REQUIRE(findings.size() == 1);
    CHECK(findings.front().kind == FindingKind::trajectory_deviation);
}

TEST_CASE("metrics are stable under trajectory resampling") {
    const auto golden = golden_from(straight_trace(8.0, 10.0));
    std::vector<TrajectoryRecord> sparse;
    for (std::size_t i = 0; i < golden.trajectory.size(); i += 3) {
        sparse.push_back(golden.trajectory[i]);
    }
    const auto metrics = compute_metrics(golden, sparse, true);
    CHECK(metrics.max_lateral == doctest::Approx(0.0));
    CHECK(metrics.min_speed_ratio == doctest::Approx(1.0));
}

TEST_CASE("near-standstill golden samples carry no speed-ratio signal") {
    // golden launch: 2 s at 0.3 m/s, then 8 m/s
    std::vector<TrajectoryRecord> launch;
    double x = 0.0;
    for (std::int64_t t_ms = 0; t_ms <= 10000; t_ms += 100) {
        const double speed = t_ms < 2000 ? 0.3 : 8.0;
        launch.push_back({t_ms, x, 0.0, 0.0, speed});
        x += speed * 0.1;
    }
    const auto golden = golden_from(launch);
    // observed crawls even slower through the launch region, then matches
    std::vector<TrajectoryRecord> observed;
    x = 0.0;
    for (std::int64_t t_ms = 0; t_ms <= 12000; t_ms += 100) {
        const double speed = x < 0.3 ? 0.05 : 8.0;
        observed.push_back({t_ms, x, 0.0, 0.0, speed});
        x += speed * 0.1;
    }
    const auto metrics = compute_metrics(golden, observed, true);
    CHECK(metrics.min_speed_ratio == doctest::Approx(1.0));
}

TEST_CASE("simulator events pass straight through to findings") {
    DeviationMetrics clean;
    clean.goal_reached = true;
    const auto findings = evaluate(clean, {}, {true, true}, {});
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].kind == FindingKind::collision);
    CHECK(findings[1].kind == FindingKind::timeout);
}

TEST_CASE("golden-run gate rejects failed unfuzzed runs") {
    const auto scenario = fuzzsense::testing::straight_scenario();

    RunResult ok{straight_trace(8.0, 10.0), true, {}};
    const auto golden = create_golden_run(scenario, [&](const ScenarioParams&) { return ok; });
    CHECK(golden.goal_reached);
    CHECK(golden.duration_sec == doctest::Approx(10.0));
    CHECK(golden.scenario == scenario);

    RunResult missed{straight_trace(8.0, 10.0), false, {}};
    CHECK_THROWS_AS(create_golden_run(scenario, [&](const ScenarioParams&) { return missed; }),
                    ScenarioInvalid);

    RunResult crashed{straight_trace(8.0, 10.0), true, {true, false}};
    CHECK_THROWS_AS(create_golden_run(scenario, [&](const ScenarioParams&) { return crashed; }),
                    ScenarioInvalid);

    RunResult empty{{}, true, {}};
    CHECK_THROWS_AS(create_golden_run(scenario, [&](const ScenarioParams&) { return empty; }),
                    InfrastructureFailure);
}

TEST_CASE("empty observed trajectory is an infrastructure failure") {
    const auto golden = golden_from(straight_trace(8.0, 10.0));
    CHECK_THROWS_AS(compute_metrics(golden, {}, false), InfrastructureFailure);
}

}  // TEST_SUITE
