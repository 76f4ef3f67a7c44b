#include <doctest.h>

#include <fstream>

#include "fuzzsense/repository.hpp"
#include "test_helpers.hpp"

using namespace fuzzsense;
using namespace fuzzsense::repository;
using orchestrator::IterationId;
using orchestrator::IterationRecord;

namespace {

oracle::GoldenRun sample_golden() {
    oracle::GoldenRun golden;
    golden.scenario = testing::straight_scenario();
    for (std::int64_t t = 0; t <= 1000; t += 100) {
        golden.trajectory.push_back({t, static_cast<double>(t) * 0.008, 0.0, 0.0, 8.0});
    }
    golden.duration_sec = 1.0;
    golden.goal_reached = true;
    return golden;
}

IterationRecord sample_record(int sensor_index = 0) {
    IterationRecord record;
    record.id = IterationId{0, 0, sensor_index};
    record.scenario_params = testing::straight_scenario();
    record.sensor_params = testing::reference_sensor_params();
    record.mask_digest = "deadbeef";
    record.rng_seed = 99;
    record.outcome = "finished";
    record.metrics.max_lateral = 0.25;
    record.frames_processed = 12;
    record.trajectory_len = 11;
    record.wall = "2026-01-01T00:00:00Z";
    return record;
}

}  // namespace

TEST_SUITE("repository") {

TEST_CASE("iteration ids format and parse as campaign-scenario-sensor") {
    const IterationId id{1, 4, 27};
    CHECK(id.str() == "1-4-27");
    CHECK(IterationId::parse("1-4-27") == id);
    CHECK_THROWS(IterationId::parse("nope"));
}

TEST_CASE("create lays out the campaign directory and config round-trips") {
    const auto root = testing::scratch_dir("repo_create");
    const auto config = testing::small_campaign_config();
    auto store = CampaignStore::create(root, config);

    CHECK(std::filesystem::exists(root / "campaign.json"));
    CHECK(std::filesystem::exists(root / "events.log"));
    CHECK(std::filesystem::is_directory(root / "golden"));
    CHECK(std::filesystem::is_directory(root / "iterations"));

    const auto loaded = store.load_config();
    CHECK(loaded.master_seed == config.master_seed);
    CHECK(loaded.scenario_seed == config.scenario_seed);
    CHECK(loaded.sensor_seed == config.sensor_seed);
    CHECK(loaded.camera.width == config.camera.width);
    CHECK(loaded.transport == config.transport);
}

TEST_CASE("iteration records round-trip field for field") {
    const auto root = testing::scratch_dir("repo_iter");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    const auto record = sample_record();
    CHECK(store.persist_iteration(record) == "0-0-0");
    CHECK(std::filesystem::exists(root / "iterations" / "0-0-0.json"));

    const auto loaded = store.load_iteration("0-0-0");
    CHECK(loaded.id == record.id);
    CHECK(loaded.scenario_params == record.scenario_params);
    CHECK(loaded.sensor_params == record.sensor_params);
    CHECK(loaded.mask_digest == record.mask_digest);
    CHECK(loaded.rng_seed == record.rng_seed);
    CHECK(loaded.outcome == record.outcome);
    CHECK(loaded.metrics.max_lateral == record.metrics.max_lateral);
    CHECK(loaded.frames_processed == record.frames_processed);
    CHECK(loaded.trajectory_len == record.trajectory_len);
    CHECK(loaded.wall == record.wall);
}

TEST_CASE("iteration ids list in numeric order, not lexicographic") {
    const auto root = testing::scratch_dir("repo_order");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    for (const int i : {10, 2, 0, 21, 3}) store.persist_iteration(sample_record(i));
    CHECK(store.list_iteration_ids() ==
          std::vector<std::string>{"0-0-0", "0-0-2", "0-0-3", "0-0-10", "0-0-21"});
}

TEST_CASE("golden trajectories round-trip through jsonl") {
    const auto root = testing::scratch_dir("repo_golden");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    const auto golden = sample_golden();
    store.persist_golden(0, golden);
    CHECK(store.load_golden_trajectory(0) == golden.trajectory);
}

TEST_CASE("replay inputs carry exactly scenario, sensor params and seed") {
    const auto root = testing::scratch_dir("repo_replay");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    const auto record = sample_record();
    store.persist_iteration(record);
    const auto inputs = store.load_for_replay("0-0-0");
    CHECK(inputs.scenario == record.scenario_params);
    CHECK(inputs.sensor == record.sensor_params);
    CHECK(inputs.rng_seed == record.rng_seed);
}

TEST_CASE("findings buffer until close and load back") {
    const auto root = testing::scratch_dir("repo_findings");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    Finding finding;
    finding.kind = FindingKind::deceleration;
    finding.iteration_id = "0-0-3";
    finding.evidence.min_speed_ratio = 0.4;
    store.persist_finding(finding);
    CHECK_FALSE(std::filesystem::exists(root / "findings.json"));
    store.close();
    const auto loaded = store.load_findings();
    REQUIRE(loaded.size() == 1);
    CHECK(loaded.front() == finding);
}

TEST_CASE("events append in order") {
    const auto root = testing::scratch_dir("repo_events");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    store.append_event("ScenarioSetup 0");
    store.append_event("GoldenRun 0");
    CHECK(store.load_events() == std::vector<std::string>{"ScenarioSetup 0", "GoldenRun 0"});
}

TEST_CASE("manifest verifies after close and detects tampering") {
    const auto root = testing::scratch_dir("repo_manifest");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    store.persist_iteration(sample_record());
    store.persist_golden(0, sample_golden());
    store.append_event("GoldenRun 0");
    store.close();
    CHECK(store.verify_manifest());

    std::ofstream tamper(root / "iterations" / "0-0-0.json", std::ios::app);
    tamper << " ";
    tamper.close();
    CHECK_FALSE(store.verify_manifest());
}

TEST_CASE("opening a missing campaign is a load error") {
    const auto root = testing::scratch_dir("repo_missing");
    CHECK_THROWS_AS(CampaignStore::open(root / "nope"), LoadError);
}

TEST_CASE("missing iteration records name the offending path") {
    const auto root = testing::scratch_dir("repo_noiter");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    CHECK_THROWS_WITH_AS(store.load_iteration("0-0-7"),
                         doctest::Contains("0-0-7"), LoadError);
}

TEST_CASE("truncated json reports the byte offset of the failure") {
    const auto root = testing::scratch_dir("repo_truncated");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    store.persist_iteration(sample_record());
    // truncate the record file
    const auto path = root / "iterations" / "0-0-0.json";
    const auto size = std::filesystem::file_size(path);
    std::filesystem::resize_file(path, size / 2);
    CHECK_THROWS_WITH_AS(store.load_iteration("0-0-0"), doctest::Contains("at byte"), LoadError);
}

TEST_CASE("a corrupt golden line reports its byte offset") {
    const auto root = testing::scratch_dir("repo_badline");
    auto store = CampaignStore::create(root, testing::small_campaign_config());
    store.persist_golden(0, sample_golden());
    std::ofstream out(root / "golden" / "0.jsonl", std::ios::app);
    out << "{broken\n";
    out.close();
    CHECK_THROWS_WITH_AS(store.load_golden_trajectory(0), doctest::Contains("at byte"),
                         LoadError);
}

TEST_CASE("an opened campaign can read what the writer persisted") {
    const auto root = testing::scratch_dir("repo_reopen");
    {
        auto store = CampaignStore::create(root, testing::small_campaign_config());
        store.persist_iteration(sample_record());
        store.close();
    }
    auto reader = CampaignStore::open(root);
    CHECK(reader.list_iteration_ids() == std::vector<std::string>{"0-0-0"});
    CHECK(reader.load_iteration("0-0-0").outcome == "finished");
    CHECK(reader.verify_manifest());
}

}  // TEST_SUITE
