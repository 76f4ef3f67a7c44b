#ifndef FUZZSENSE_JSON_CODEC_HPP
#define FUZZSENSE_JSON_CODEC_HPP

#include <json.hpp>

#include "fuzzsense/broker.hpp"
#include "fuzzsense/config.hpp"
#include "fuzzsense/core.hpp"
#include "fuzzsense/oracle.hpp"

// JSON field names are the stable on-disk and wire contract.

namespace fuzzsense {

void to_json(nlohmann::json& j, const SensorFuzzParams& p);
void from_json(const nlohmann::json& j, SensorFuzzParams& p);

void to_json(nlohmann::json& j, const ObstacleBox& b);
void from_json(const nlohmann::json& j, ObstacleBox& b);

void to_json(nlohmann::json& j, const ScenarioParams& s);
void from_json(const nlohmann::json& j, ScenarioParams& s);

void to_json(nlohmann::json& j, const TrajectoryRecord& r);
void from_json(const nlohmann::json& j, TrajectoryRecord& r);

void to_json(nlohmann::json& j, const LidarPoint& p);
void from_json(const nlohmann::json& j, LidarPoint& p);

void to_json(nlohmann::json& j, const PointCloud& c);
void from_json(const nlohmann::json& j, PointCloud& c);

void to_json(nlohmann::json& j, const CameraFrame& f);
void from_json(const nlohmann::json& j, CameraFrame& f);

void to_json(nlohmann::json& j, const ControlCommand& c);
void from_json(const nlohmann::json& j, ControlCommand& c);

void to_json(nlohmann::json& j, const FindingEvidence& e);
void from_json(const nlohmann::json& j, FindingEvidence& e);

void to_json(nlohmann::json& j, const Finding& f);
void from_json(const nlohmann::json& j, Finding& f);

}  // namespace fuzzsense

namespace fuzzsense::broker {

void to_json(nlohmann::json& j, const BrokerMessage& m);
void from_json(const nlohmann::json& j, BrokerMessage& m);

}  // namespace fuzzsense::broker

namespace fuzzsense::oracle {

void to_json(nlohmann::json& j, const OracleThresholds& t);
void from_json(const nlohmann::json& j, OracleThresholds& t);

void to_json(nlohmann::json& j, const DeviationMetrics& m);
void from_json(const nlohmann::json& j, DeviationMetrics& m);

}  // namespace fuzzsense::oracle

namespace fuzzsense::mutator {

void to_json(nlohmann::json& j, const GridAxis& a);
void from_json(const nlohmann::json& j, GridAxis& a);

}  // namespace fuzzsense::mutator

namespace fuzzsense::worldsim {

void to_json(nlohmann::json& j, const LidarSpec& s);
void from_json(const nlohmann::json& j, LidarSpec& s);

void to_json(nlohmann::json& j, const CameraSpec& s);
void from_json(const nlohmann::json& j, CameraSpec& s);

void to_json(nlohmann::json& j, const PerceptionParams& p);
void from_json(const nlohmann::json& j, PerceptionParams& p);

void to_json(nlohmann::json& j, const PlannerParams& p);
void from_json(const nlohmann::json& j, PlannerParams& p);

}  // namespace fuzzsense::worldsim

namespace fuzzsense::orchestrator {

void to_json(nlohmann::json& j, const StopConditions& s);
void from_json(const nlohmann::json& j, StopConditions& s);

void to_json(nlohmann::json& j, const CampaignConfig& c);
void from_json(const nlohmann::json& j, CampaignConfig& c);

void to_json(nlohmann::json& j, const IterationRecord& r);
void from_json(const nlohmann::json& j, IterationRecord& r);

}  // namespace fuzzsense::orchestrator

#endif
