#ifndef FUZZSENSE_ORCHESTRATOR_HPP
#define FUZZSENSE_ORCHESTRATOR_HPP

#include <memory>
#include <optional>

#include "fuzzsense/broker.hpp"
#include "fuzzsense/config.hpp"
#include "fuzzsense/oracle.hpp"
#include "fuzzsense/repository.hpp"
#include "fuzzsense/socket_transport.hpp"
#include "fuzzsense/worldsim.hpp"

namespace fuzzsense::orchestrator {

/// Non-finding infrastructure failure of a run (sim/ADS crash analog).
struct InfrastructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Central campaign manager. Owns the broker, commands mutator, oracle and
/// repository through direct adapters; fuzzing modules never message each
/// other directly.
class Orchestrator {
public:
    Orchestrator(CampaignConfig config, repository::CampaignStore* store);

    /// Runs scenario fuzzing iterations until a stop condition or grid
    /// exhaustion, persisting all results through the repository.
    CampaignReport run_campaign();

    /// Executes one full scenario run. When armed params/mask are given and
    /// fuzzing is enabled, every frame is fuzzed with that fixed mask.
    oracle::RunResult execute_run(const ScenarioParams& scenario,
                                  const std::optional<SensorFuzzParams>& armed_params,
                                  std::shared_ptr<const FuzzingMask> mask, double timeout_sec,
                                  std::int64_t* frames_processed = nullptr);

    const CampaignConfig& config() const { return config_; }

private:
    IterationRecord run_sensor_iteration(const ScenarioParams& scenario,
                                         const SensorFuzzParams& params,
                                         const oracle::GoldenRun& golden, IterationId id,
                                         std::vector<Finding>& findings_out);

    // data-path adapters: direct calls in inproc mode, framed TCP otherwise
    broker::BrokerMessage send_lifecycle(broker::LifecycleVerb verb);
    std::optional<broker::BrokerMessage> send_sensor(const broker::BrokerMessage& msg);
    void send_control(const ControlCommand& cmd);

    CampaignConfig config_;
    repository::CampaignStore* store_;
    broker::Broker broker_;
    SensorMeta sensor_meta_;
    std::unique_ptr<broker::BrokerSocketServer> socket_server_;
    std::unique_ptr<broker::FramedClient> socket_client_;
};

/// Re-executes one persisted iteration from its stored inputs and returns the
/// reproduced finding kinds (empty when the run is clean).
std::vector<std::string> replay_iteration(const CampaignConfig& config,
                                          const repository::ReplayInputs& inputs);

/// Upper bound on unfuzzed run duration, used before a golden run exists.
double unfuzzed_timeout_sec(const ScenarioParams& scenario);

}  // namespace fuzzsense::orchestrator

#endif
