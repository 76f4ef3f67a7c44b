#include "fuzzsense/repository.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fuzzsense/json_codec.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace fuzzsense::repository {

namespace {

constexpr int kJsonIndent = 2;

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t hash = 14695981039346656037ull;
    for (const unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot open file for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw StoreError("write failed: " + path.string());
}

json parse_file(const fs::path& path) {
    const std::string content = read_file(path);
    try {
        return json::parse(content);
    } catch (const json::parse_error& e) {
        // e.byte carries the offset of the failure
        throw LoadError("parse error in " + path.string() + " at byte " + std::to_string(e.byte) +
                        ": " + e.what());
    }
}

}  // namespace

CampaignStore CampaignStore::create(const fs::path& root,
                                    const orchestrator::CampaignConfig& config) {
    std::error_code ec;
    fs::create_directories(root / "golden", ec);
    fs::create_directories(root / "iterations", ec);
    if (ec) throw StoreError("cannot create campaign directories under " + root.string());

    CampaignStore store(root);
    write_file(root / "campaign.json", json(config).dump(kJsonIndent) + "\n");
    write_file(root / "events.log", "");
    return store;
}

CampaignStore CampaignStore::open(const fs::path& root) {
    if (!fs::exists(root / "campaign.json")) {
        throw LoadError("no campaign at " + root.string() + " (campaign.json missing)");
    }
    CampaignStore store(root);
    store.closed_ = true;
    return store;
}

void CampaignStore::persist_golden(int scenario_index, const oracle::GoldenRun& golden) {
    std::ostringstream lines;
    for (const auto& record : golden.trajectory) lines << json(record).dump() << "\n";
    write_file(root_ / "golden" / (std::to_string(scenario_index) + ".jsonl"), lines.str());
}

std::string CampaignStore::persist_iteration(const orchestrator::IterationRecord& record) {
    const std::string id = record.id.str();
    write_file(root_ / "iterations" / (id + ".json"), json(record).dump(kJsonIndent) + "\n");
    return id;
}

void CampaignStore::persist_finding(const Finding& finding) {
    pending_findings_.push_back(finding);
}

void CampaignStore::append_event(const std::string& event) {
    std::ofstream out(root_ / "events.log", std::ios::app);
    if (!out) throw StoreError("cannot append to events.log");
    out << event << "\n";
    out.flush();
}

void CampaignStore::close() {
    if (closed_) return;
    write_file(root_ / "findings.json", json(pending_findings_).dump(kJsonIndent) + "\n");

    json manifest = json::object();
    for (const auto& entry : fs::recursive_directory_iterator(root_)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), root_).generic_string();
        if (rel == "manifest.json") continue;
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a(read_file(entry.path()))));
        manifest[rel] = buf;
    }
    write_file(root_ / "manifest.json", manifest.dump(kJsonIndent) + "\n");
    closed_ = true;
}

orchestrator::CampaignConfig CampaignStore::load_config() const {
    return parse_file(root_ / "campaign.json").get<orchestrator::CampaignConfig>();
}

orchestrator::IterationRecord CampaignStore::load_iteration(const std::string& iteration_id) const {
    const fs::path path = root_ / "iterations" / (iteration_id + ".json");
    if (!fs::exists(path)) throw LoadError("no such iteration record: " + path.string());
    return parse_file(path).get<orchestrator::IterationRecord>();
}

std::vector<std::string> CampaignStore::list_iteration_ids() const {
    std::vector<std::string> ids;
    const fs::path dir = root_ / "iterations";
    if (!fs::exists(dir)) return ids;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
    }
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
        return orchestrator::IterationId::parse(a) < orchestrator::IterationId::parse(b);
    });
    return ids;
}

std::vector<TrajectoryRecord> CampaignStore::load_golden_trajectory(int scenario_index) const {
    const fs::path path = root_ / "golden" / (std::to_string(scenario_index) + ".jsonl");
    std::ifstream in(path);
    if (!in) throw LoadError("no golden trajectory: " + path.string());
    std::vector<TrajectoryRecord> trajectory;
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            trajectory.push_back(json::parse(line).get<TrajectoryRecord>());
        } catch (const json::parse_error& e) {
            throw LoadError("parse error in " + path.string() + " at byte " +
                            std::to_string(offset + e.byte) + ": " + e.what());
        }
        offset += line.size() + 1;
    }
    return trajectory;
}

std::vector<Finding> CampaignStore::load_findings() const {
    const fs::path path = root_ / "findings.json";
    if (!fs::exists(path)) return {};
    return parse_file(path).get<std::vector<Finding>>();
}

std::vector<std::string> CampaignStore::load_events() const {
    std::ifstream in(root_ / "events.log");
    std::vector<std::string> events;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) events.push_back(line);
    }
    return events;
}

ReplayInputs CampaignStore::load_for_replay(const std::string& iteration_id) const {
    const orchestrator::IterationRecord record = load_iteration(iteration_id);
    return ReplayInputs{record.scenario_params, record.sensor_params, record.rng_seed};
}

bool CampaignStore::verify_manifest() const {
    const json manifest = parse_file(root_ / "manifest.json");
    for (const auto& [rel, expected] : manifest.items()) {
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a(read_file(root_ / rel))));
        if (expected.get<std::string>() != buf) return false;
    }
    return true;
}

}  // namespace fuzzsense::repository
