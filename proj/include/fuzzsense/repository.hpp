#ifndef FUZZSENSE_REPOSITORY_HPP
#define FUZZSENSE_REPOSITORY_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzsense/config.hpp"
#include "fuzzsense/oracle.hpp"

namespace fuzzsense::repository {

struct StoreError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exactly the inputs needed to re-execute one iteration deterministically.
struct ReplayInputs {
    ScenarioParams scenario;
    SensorFuzzParams sensor;
    std::uint64_t rng_seed{0};
};

/// On-disk campaign layout (all UTF-8 JSON):
///   campaign.json                config
///   golden/<scenario_index>.jsonl  one TrajectoryRecord per line
///   iterations/<id>.json         IterationRecord
///   findings.json                array of Finding, written at close
///   events.log                   orchestrator event stream, one line each
///   manifest.json                content checksums, written at close
/// Append-only during a campaign; single writer.
class CampaignStore {
public:
    /// Creates the directory layout and writes campaign.json.
    static CampaignStore create(const std::filesystem::path& root,
                                const orchestrator::CampaignConfig& config);

    /// Opens a completed campaign read-only.
    static CampaignStore open(const std::filesystem::path& root);

    const std::filesystem::path& root() const { return root_; }

    void persist_golden(int scenario_index, const oracle::GoldenRun& golden);
    std::string persist_iteration(const orchestrator::IterationRecord& record);
    void persist_finding(const Finding& finding);
    void append_event(const std::string& event);

    /// Writes findings.json and the checksum manifest; no file is rewritten
    /// after close.
    void close();

    orchestrator::CampaignConfig load_config() const;
    orchestrator::IterationRecord load_iteration(const std::string& iteration_id) const;
    std::vector<std::string> list_iteration_ids() const;
    std::vector<TrajectoryRecord> load_golden_trajectory(int scenario_index) const;
    std::vector<Finding> load_findings() const;
    std::vector<std::string> load_events() const;
    ReplayInputs load_for_replay(const std::string& iteration_id) const;

    /// Recomputes checksums against manifest.json.
    bool verify_manifest() const;

private:
    explicit CampaignStore(std::filesystem::path root) : root_(std::move(root)) {}

    std::filesystem::path root_;
    std::vector<Finding> pending_findings_;
    bool closed_{false};
};

}  // namespace fuzzsense::repository

#endif
