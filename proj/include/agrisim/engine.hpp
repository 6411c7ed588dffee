#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agrisim/json_types.hpp"
#include "agrisim/mission.hpp"
#include "agrisim/netsim.hpp"
#include "agrisim/scenario.hpp"
#include "agrisim/sprayer.hpp"

namespace agrisim {

struct Event {
  double t_s = 0.0;
  std::string entity;
  std::string kind;
  Json payload;
};

struct StageCounts {
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
};

// Every ground-truth plant ends in exactly one bucket.
struct PlantFates {
  int total = 0;
  int sprayed = 0;
  int missed_by_detection = 0;
  int missed_by_verification = 0;
  int missed_by_tank = 0;
  int outside_coverage = 0;
  int missed_by_abort = 0;

  bool reconciles() const {
    return total == sprayed + missed_by_detection + missed_by_verification + missed_by_tank + outside_coverage +
                        missed_by_abort;
  }
};

struct ScenarioReport {
  Json effective_config;
  std::uint64_t seed = 0;
  SurveyEstimate survey;
  StageCounts raw_detections;
  StageCounts filtered_detections;
  StageCounts targets;
  int duplicate_targets = 0;
  std::string heuristic;
  double nn_length_m = 0.0;
  double improved_length_m = 0.0;
  std::optional<double> oracle_length_m;
  double route_length_m = 0.0;
  SprayReport spray;
  PlantFates plants;
  std::string network_preset;
  std::vector<TrafficSource> traffic;
  LinkSummary uplink;
  LinkSummary downlink;
  std::string uplink_verdict;
  std::string downlink_verdict;
  double offload_slack_s = 0.0;
  double survey_end_s = 0.0;
  double route_ready_s = 0.0;
  double mission_end_s = 0.0;
  std::vector<Event> events;

  Json to_json() const;
  // Flat key,value table of the numeric report figures.
  std::string summary_csv() const;
  std::string events_jsonl() const;
};

// Traffic implied by a scenario: UAV camera and FPV, robot camera streams,
// optional downlink control traffic.
std::vector<TrafficSource> scenario_traffic(const Scenario& s, const SurveyEstimate& est);
std::string link_verdict(const char* direction, const LinkTrace& trace, const std::vector<TrafficSource>& sources,
                         double capacity_bps);

ScenarioReport run_scenario(const Scenario& scenario);

// One run per value of the addressed scalar, each with the scenario's seed.
// jobs > 1 runs entries on worker threads; output order follows values.
std::vector<ScenarioReport> sweep(const Scenario& scenario, const std::string& parameter_path,
                                  const std::vector<Json>& values, int jobs = 1);

}  // namespace agrisim
