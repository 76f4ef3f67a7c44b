#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "fuzzsense/json_codec.hpp"
#include "fuzzsense/orchestrator.hpp"
#include "fuzzsense/repository.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfrastructure = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

fuzzsense::orchestrator::CampaignConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open config: " << path << "\n";
        std::exit(kExitNoInput);
    }
    json j;
    try {
        in >> j;
        return j.get<fuzzsense::orchestrator::CampaignConfig>();
    } catch (const json::exception& e) {
        std::cerr << "bad config " << path << ": " << e.what() << "\n";
        std::exit(kExitUsage);
    }
}

void apply_seed_override(fuzzsense::orchestrator::CampaignConfig& config,
                         const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed.has_value()) {
        config.master_seed = *flag_seed;
        return;
    }
    if (const char* env = std::getenv("FUZZSENSE_SEED")) {
        config.master_seed = std::strtoull(env, nullptr, 10);
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::optional<std::uint64_t>& seed, const std::string& transport) {
    auto config = load_config_file(config_path);
    apply_seed_override(config, seed);
    if (!transport.empty()) config.transport = transport;

    const auto violations = fuzzsense::orchestrator::validate_config(config);
    if (!violations.ok()) {
        for (const auto& v : violations.violations) std::cerr << "config violation: " << v << "\n";
        return kExitUsage;
    }

    auto store = fuzzsense::repository::CampaignStore::create(out_dir, config);
    fuzzsense::orchestrator::Orchestrator orchestrator(config, &store);
    const auto report = orchestrator.run_campaign();

    std::cout << "iterations: " << report.iterations.size() << "\n"
              << "findings: " << report.findings.size() << "\n"
              << "stop reason: " << report.stop_reason << "\n";
    return report.stop_reason == "aborted" ? kExitInfrastructure : kExitOk;
}

int cmd_replay(const std::string& campaign_dir, const std::string& iteration_id) {
    try {
        auto store = fuzzsense::repository::CampaignStore::open(campaign_dir);
        const auto config = store.load_config();
        const auto record = store.load_iteration(iteration_id);
        const auto inputs = store.load_for_replay(iteration_id);

        const auto kinds = fuzzsense::orchestrator::replay_iteration(config, inputs);

        auto joined = [](const std::vector<std::string>& v) {
            std::string out = "[";
            for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
            return out + "]";
        };
        std::cout << "stored:   " << joined(record.finding_kinds) << "\n"
                  << "replayed: " << joined(kinds) << "\n";
        const bool match = kinds == record.finding_kinds;
        std::cout << "verdict: " << (match ? "match" : "MISMATCH") << "\n";
        return match ? kExitOk : 1;
    } catch (const fuzzsense::repository::LoadError& e) {
        std::cerr << e.what() << "\n";
        return kExitNoInput;
    }
}

int cmd_report(const std::string& campaign_dir, const std::string& out_dir) {
    try {
        auto store = fuzzsense::repository::CampaignStore::open(campaign_dir);
        fs::create_directories(out_dir);

        std::ofstream iterations_csv(fs::path(out_dir) / "iterations.csv");
        iterations_csv << "id,outcome,finding_kinds,max_lateral,min_speed_ratio,immobile_sec,"
                          "goal_reached,completion_ratio,frames,distance,center_x,center_y\n";
        std::map<std::string, int> by_group;
        for (const auto& id : store.list_iteration_ids()) {
            const auto r = store.load_iteration(id);
            std::string kinds;
            for (std::size_t i = 0; i < r.finding_kinds.size(); ++i) {
                kinds += (i ? ";" : "") + r.finding_kinds[i];
            }
            iterations_csv << id << ',' << r.outcome << ',' << kinds << ','
                           << r.metrics.max_lateral << ',' << r.metrics.min_speed_ratio << ','
                           << r.metrics.immobile_sec << ',' << (r.metrics.goal_reached ? 1 : 0)
                           << ',' << r.metrics.completion_ratio << ',' << r.frames_processed << ','
                           << r.sensor_params.distance << ',' << r.sensor_params.center_x << ','
                           << r.sensor_params.center_y << "\n";
        }
        for (const auto& f : store.load_findings()) {
            char key[160];
            std::snprintf(key, sizeof(key), "%s,d=%.1f,x=%.2f,y=%.2f", to_string(f.kind),
                          f.sensor_params.distance, f.sensor_params.center_x,
                          f.sensor_params.center_y);
            ++by_group[key];
        }
        std::ofstream findings_csv(fs::path(out_dir) / "findings_summary.csv");
        findings_csv << "kind,distance,center_x,center_y,count\n";
        for (const auto& [key, count] : by_group) findings_csv << key << ',' << count << "\n";

        std::cout << "report written to " << out_dir << "\n";
        return kExitOk;
    } catch (const fuzzsense::repository::LoadError& e) {
        std::cerr << e.what() << "\n";
        return kExitNoInput;
    }
}

int cmd_validate(const std::string& config_path) {
    const auto config = load_config_file(config_path);
    const auto result = fuzzsense::orchestrator::validate_config(config);
    if (result.ok()) {
        std::cout << "config ok\n";
        return kExitOk;
    }
    for (const auto& v : result.violations) std::cout << "violation: " << v << "\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzsense: mutation-based ensemble fuzzing for driving software"};
    app.require_subcommand(1);

    std::string config_path;
    std::string campaign_dir;
    std::string iteration_id;
    std::string out_path = "out";
    std::string transport;
    std::optional<std::uint64_t> seed;

    auto* run = app.add_subcommand("run", "run a fuzzing campaign");
    run->add_option("--config", config_path, "campaign configuration file")->required();
    run->add_option("--out", out_path, "campaign output directory");
    run->add_option("--seed", seed, "master seed override");
    run->add_option("--transport", transport, "inproc or socket")
        ->check(CLI::IsMember({"inproc", "socket"}));

    auto* replay = app.add_subcommand("replay", "re-execute one stored iteration");
    replay->add_option("--campaign", campaign_dir, "campaign directory")->required();
    replay->add_option("--iteration", iteration_id, "iteration id, e.g. 0-0-1")->required();

    auto* report = app.add_subcommand("report", "emit findings summary and metric tables");
    report->add_option("--campaign", campaign_dir, "campaign directory")->required();
    report->add_option("--out", out_path, "report output directory");

    auto* validate = app.add_subcommand("validate", "check a config against schema and bounds");
    validate->add_option("--config", config_path, "campaign configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_path, seed, transport);
        if (replay->parsed()) return cmd_replay(campaign_dir, iteration_id);
        if (report->parsed()) return cmd_report(campaign_dir, out_path);
        if (validate->parsed()) return cmd_validate(config_path);
    } catch (const fuzzsense::orchestrator::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInfrastructure;
    }
    return kExitUsage;
}
