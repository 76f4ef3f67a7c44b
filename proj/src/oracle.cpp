#include "fuzzsense/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace fuzzsense::oracle {

namespace {

struct GoldenPath {
    std::vector<double> arc;     // cumulative arc length per golden sample
    std::vector<double> speed;   // golden speed per sample
    const std::vector<TrajectoryRecord>* records;

    explicit GoldenPath(const std::vector<TrajectoryRecord>& golden) : records(&golden) {
        arc.resize(golden.size());
        speed.resize(golden.size());
        arc[0] = 0.0;
        speed[0] = golden[0].speed;
        for (std::size_t i = 1; i < golden.size(); ++i) {
            arc[i] = arc[i - 1] + std::hypot(golden[i].x - golden[i - 1].x,
                                             golden[i].y - golden[i - 1].y);
            speed[i] = golden[i].speed;
        }
    }

    // Projects a pose onto the golden polyline: (arc length, distance to path).
    std::array<double, 2> project(double x, double y) const {
        const auto& g = *records;
        double best_s = 0.0;
        double best_dist = std::numeric_limits<double>::infinity();
        if (g.size() == 1) {
            return {0.0, std::hypot(x - g[0].x, y - g[0].y)};
        }
        for (std::size_t i = 1; i < g.size(); ++i) {
            const double ax = g[i - 1].x, ay = g[i - 1].y;
            const double vx = g[i].x - ax, vy = g[i].y - ay;
            const double len2 = vx * vx + vy * vy;
            double t = len2 > 0 ? ((x - ax) * vx + (y - ay) * vy) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const double dist = std::hypot(x - (ax + t * vx), y - (ay + t * vy));
            if (dist < best_dist) {
                best_dist = dist;
                best_s = arc[i - 1] + t * (arc[i] - arc[i - 1]);
            }
        }
        return {best_s, best_dist};
    }

    double speed_at(double s) const {
        if (s <= arc.front()) return speed.front();
        if (s >= arc.back()) return speed.back();
        const auto it = std::upper_bound(arc.begin(), arc.end(), s);
        const std::size_t i = static_cast<std::size_t>(it - arc.begin());
        const double span = arc[i] - arc[i - 1];
        const double t = span > 0 ? (s - arc[i - 1]) / span : 0.0;
        return speed[i - 1] + t * (speed[i] - speed[i - 1]);
    }

    double max_speed() const { return *std::max_element(speed.begin(), speed.end()); }
};

}  // namespace

GoldenRun create_golden_run(const ScenarioParams& scenario,
                            const std::function<RunResult(const ScenarioParams&)>& run_unfuzzed) {
    RunResult result = run_unfuzzed(scenario);
    if (result.trajectory.empty()) {
        throw InfrastructureFailure("golden run produced no trajectory");
    }
    if (!result.goal_reached || result.events.collision || result.events.timeout) {
        throw ScenarioInvalid("unfuzzed run failed; scenario invalid");
    }
    GoldenRun golden;
    golden.scenario = scenario;
    golden.trajectory = std::move(result.trajectory);
    golden.duration_sec = static_cast<double>(golden.trajectory.back().sim_time_ms) / 1000.0;
    golden.goal_reached = true;
    return golden;
}

DeviationMetrics compute_metrics(const GoldenRun& golden,
                                 const std::vector<TrajectoryRecord>& observed,
                                 bool goal_reached, double sustain_sec,
                                 double immobility_speed) {
    if (observed.empty()) throw InfrastructureFailure("observed trajectory is empty");
    if (golden.trajectory.empty()) throw InfrastructureFailure("golden trajectory is empty");

    const GoldenPath path(golden.trajectory);
    const double speed_floor = std::max(0.5, 0.1 * path.max_speed());

    DeviationMetrics metrics;
    metrics.goal_reached = goal_reached;
    metrics.completion_ratio = golden.duration_sec > 0
        ? (static_cast<double>(observed.back().sim_time_ms) / 1000.0) / golden.duration_sec
        : 0.0;

    // per-sample speed ratio against the golden speed at the matched arc length
    std::vector<double> ratio(observed.size(), 1.0);
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const auto [s, dist] = path.project(observed[i].x, observed[i].y);
        metrics.max_lateral = std::max(metrics.max_lateral, dist);
        const double golden_speed = path.speed_at(s);
        // near-standstill golden samples (launch phase) carry no ratio signal
        ratio[i] = golden_speed < speed_floor ? 1.0 : observed[i].speed / golden_speed;
    }

    // sustained drop: min over all windows of length sustain_sec of the
    // in-window maximum ratio
    metrics.min_speed_ratio = 1.0;
    const std::int64_t sustain_ms = static_cast<std::int64_t>(std::llround(sustain_sec * 1000.0));
    std::size_t window_end = 0;
    std::deque<std::size_t> max_queue;  // indices, ratios decreasing
    for (std::size_t begin = 0; begin < observed.size(); ++begin) {
        while (!max_queue.empty() && max_queue.front() < begin) max_queue.pop_front();
        while (window_end < observed.size() &&
               observed[window_end].sim_time_ms - observed[begin].sim_time_ms <= sustain_ms) {
            while (!max_queue.empty() && ratio[max_queue.back()] <= ratio[window_end]) {
                max_queue.pop_back();
            }
            max_queue.push_back(window_end);
            ++window_end;
        }
        // only full windows count as sustained
        if (window_end < observed.size() ||
            observed.back().sim_time_ms - observed[begin].sim_time_ms >= sustain_ms) {
            metrics.min_speed_ratio = std::min(metrics.min_speed_ratio, ratio[max_queue.front()]);
        }
    }

    // longest immobile span
    double longest = 0.0;
    std::int64_t span_start = -1;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (observed[i].speed < immobility_speed) {
            if (span_start < 0) span_start = observed[i].sim_time_ms;
            longest = std::max(longest,
                               static_cast<double>(observed[i].sim_time_ms - span_start) / 1000.0);
        } else {
            span_start = -1;
        }
    }
    metrics.immobile_sec = longest;
    return metrics;
}

std::vector<Finding> evaluate(const DeviationMetrics& metrics, const OracleThresholds& t,
                              const RunEvents& events, const FindingContext& context) {
    std::vector<Finding> findings;
    auto emit = [&](FindingKind kind) {
        Finding f;
        f.kind = kind;
        f.sensor_params = context.sensor_params;
        f.scenario_params = context.scenario_params;
        f.iteration_id = context.iteration_id;
        f.evidence = {metrics.max_lateral, metrics.min_speed_ratio, metrics.immobile_sec};
        findings.push_back(std::move(f));
    };

    if (metrics.max_lateral > t.eps_lateral) emit(FindingKind::trajectory_deviation);
    if (metrics.min_speed_ratio < t.speed_ratio_min) emit(FindingKind::deceleration);
    if (metrics.immobile_sec >= t.immobility_sec && !metrics.goal_reached) {
        emit(FindingKind::immobility);
    }
    if (events.collision) emit(FindingKind::collision);
    if (events.timeout) emit(FindingKind::timeout);
    return findings;
}

}  // namespace fuzzsense::oracle
