#include "agrisim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>

#include "agrisim/error.hpp"
#include "agrisim/field.hpp"
#include "agrisim/route.hpp"
#include "agrisim/serialize.hpp"

namespace agrisim {

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const ValidationError& e) {
    throw StageError(name, e.what(), true);
  } catch (const Error& e) {
    throw StageError(name, e.what(), false);
  }
}

Json counts_json(const StageCounts& c) {
  return Json{{"true_positives", c.true_positives},
              {"false_positives", c.false_positives},
              {"false_negatives", c.false_negatives}};
}

Json fates_json(const PlantFates& f) {
  return Json{{"total", f.total},
              {"sprayed", f.sprayed},
              {"missed_by_detection", f.missed_by_detection},
              {"missed_by_verification", f.missed_by_verification},
              {"missed_by_tank", f.missed_by_tank},
              {"outside_coverage", f.outside_coverage},
              {"missed_by_abort", f.missed_by_abort},
              {"reconciles", f.reconciles()}};
}

Json source_json(const TrafficSource& s) {
  return Json{{"name", s.name},       {"direction", to_string(s.direction)}, {"rate_bps", s.rate_bps},
              {"burst_bits", s.burst_bits}, {"period_s", s.period_s},        {"mean_rate_bps", s.mean_rate_bps()}};
}

// Counts boxes matched to plants and plants with at least one box.
StageCounts box_counts(const std::vector<BBox>& boxes, const std::vector<bool>& covered) {
  StageCounts c;
  std::vector<char> seen(covered.size(), 0);
  for (const auto& b : boxes) {
    if (b.truth_plant_id >= 0) {
      ++c.true_positives;
      seen[static_cast<std::size_t>(b.truth_plant_id)] = 1;
    } else {
      ++c.false_positives;
    }
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (covered[i] && !seen[i]) ++c.false_negatives;
  }
  return c;
}

PlantFates fates_from_log(const std::vector<Event>& events) {
  PlantFates f;
  for (const auto& e : events) {
    if (e.kind != "plant_fate") continue;
    ++f.total;
    const std::string fate = e.payload.at("fate").get<std::string>();
    if (fate == "sprayed") ++f.sprayed;
    else if (fate == "missed_by_detection") ++f.missed_by_detection;
    else if (fate == "missed_by_verification") ++f.missed_by_verification;
    else if (fate == "missed_by_tank") ++f.missed_by_tank;
    else if (fate == "outside_coverage") ++f.outside_coverage;
    else if (fate == "missed_by_abort") ++f.missed_by_abort;
  }
  return f;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_number_float()) {
    out += prefix + "," + fmt(j.get<double>()) + "\n";
  } else if (j.is_number() || j.is_boolean()) {
    out += prefix + "," + j.dump() + "\n";
  } else if (j.is_string()) {
    out += prefix + "," + j.get<std::string>() + "\n";
  }
}

}  // namespace

std::vector<TrafficSource> scenario_traffic(const Scenario& s, const SurveyEstimate& est) {
  std::vector<TrafficSource> src;
  if (s.network.camera_traffic == "burst" && est.capture_interval_s > 0.0) {
    src.push_back(TrafficSource::periodic("uav-detection-camera", Direction::Up, s.survey.image_size_bits,
                                          est.capture_interval_s));
  } else {
    src.push_back(TrafficSource::constant("uav-detection-camera", Direction::Up, est.mean_capture_rate_bps));
  }
  src.push_back(TrafficSource::constant("uav-fpv", Direction::Up, s.survey.fpv_rate_bps));
  for (int k = 0; k < s.network.robot_camera_streams; ++k) {
    src.push_back(TrafficSource::constant("robot-camera-" + std::to_string(k), Direction::Up,
                                          s.network.robot_camera_rate_bps));
  }
  if (s.network.downlink_control_bps > 0.0) {
    src.push_back(TrafficSource::constant("control-downlink", Direction::Down, s.network.downlink_control_bps));
  }
  return src;
}

std::string link_verdict(const char* direction, const LinkTrace& trace, const std::vector<TrafficSource>& sources,
                         double capacity_bps) {
  double offered = 0.0;
  for (const auto& s : sources) {
    if (s.direction == trace.direction) offered += s.mean_rate_bps();
  }
  const bool ok = offered <= capacity_bps && !trace.summary.saturated;
  return std::string(direction) + (ok ? " feasible" : " infeasible");
}

ScenarioReport run_scenario(const Scenario& sc) {
  stage("validate", [&] {
    sc.validate();
    return 0;
  });
  ScenarioReport rep;
  rep.effective_config = to_json(sc);
  rep.seed = sc.seed;
  std::vector<Event> ev;

  const FieldPolygon poly = stage("survey", [&] { return FieldPolygon(sc.field); });
  const SurveyPlan plan = stage("survey", [&] {
    return plan_coverage(poly, sc.survey.track_spacing_m, sc.survey.altitude_m, sc.survey.speed_mps,
                         sc.survey.sweep_heading_deg, sc.survey.turn_time_s);
  });
  const CaptureSchedule captures =
      stage("survey", [&] { return capture_schedule(plan, sc.camera, sc.survey.overlap, sc.origin); });
  rep.survey = stage("survey", [&] {
    return survey_estimate(plan, captures, sc.survey.image_size_bits, sc.survey.fpv_rate_bps);
  });
  rep.survey_end_s = rep.survey.duration_s;
  ev.push_back({0.0, "uav", "survey_start",
                Json{{"tracks", rep.survey.track_count}, {"planned_images", rep.survey.image_count}}});

  const GroundTruth truth = stage("field", [&] {
    return sc.plants.count ? generate_field_count(sc.seed, poly, *sc.plants.count, sc.plants.diameter_mean_m,
                                                  sc.plants.diameter_sigma_m)
                           : generate_field(sc.seed, poly, sc.plants.density_per_ha, sc.plants.diameter_mean_m,
                                            sc.plants.diameter_sigma_m);
  });
  const std::vector<bool> covered =
      stage("detect", [&] { return plants_in_coverage(truth, captures.events, sc.camera, sc.origin); });
  const auto raw = stage("detect", [&] {
    return simulate_detections(truth, captures.events, sc.camera, sc.detector, sc.seed, sc.origin);
  });
  const auto kept =
      stage("filter", [&] { return filter_boxes(raw, sc.filter.min_area_m2, sc.filter.min_area_to_length_m); });
  const TargetList targets =
      stage("merge", [&] { return georef_and_merge(kept, captures.events, sc.camera, sc.merge_radius_m, sc.origin); });

  {
    std::map<int, int> boxes_per_image;
    for (const auto& b : raw) ++boxes_per_image[b.image_id];
    for (const auto& c : captures.events) {
      const LocalPoint at = wgs84_to_enu(sc.origin, c.pose.position);
      ev.push_back({c.time_s, "uav", "capture",
                    Json{{"image_id", c.image_id},
                         {"east_m", at.east_m},
                         {"north_m", at.north_m},
                         {"heading_deg", c.pose.heading_deg},
                         {"detections", boxes_per_image[c.image_id]}}});
    }
  }
  ev.push_back({rep.survey_end_s, "uav", "survey_end", Json{{"images", rep.survey.image_count}}});

  rep.raw_detections = box_counts(raw, covered);
  rep.filtered_detections = box_counts(kept, covered);

  // Target provenance: the plant contributing most support boxes, ties to the lowest id.
  std::unordered_map<int, const BBox*> box_by_id;
  for (const auto& b : kept) box_by_id.emplace(b.id, &b);
  std::vector<SprayTarget> spray_targets;
  std::vector<std::vector<int>> claims(truth.plants.size());
  for (const auto& t : targets.targets) {
    std::map<int, int> votes;
    for (int id : t.support) {
      const int p = box_by_id.at(id)->truth_plant_id;
      if (p >= 0) ++votes[p];
    }
    int plant = -1, best = 0;
    for (const auto& [p, n] : votes) {
      if (n > best) {
        best = n;
        plant = p;
      }
    }
    SprayTarget st;
    st.id = t.id;
    st.position = t.position;
    st.diameter_m = t.diameter_m;
    st.real = plant >= 0;
    st.plant_id = plant;
    st.true_position = plant >= 0 ? truth.plants[static_cast<std::size_t>(plant)].position : t.position;
    st.true_diameter_m = plant >= 0 ? truth.plants[static_cast<std::size_t>(plant)].diameter_m : t.diameter_m;
    if (plant >= 0) {
      if (!claims[static_cast<std::size_t>(plant)].empty()) ++rep.duplicate_targets;
      claims[static_cast<std::size_t>(plant)].push_back(t.id);
      ++rep.targets.true_positives;
    } else {
      ++rep.targets.false_positives;
    }
    spray_targets.push_back(st);
  }
  rep.targets.true_positives -= rep.duplicate_targets;
  for (std::size_t i = 0; i < truth.plants.size(); ++i) {
    if (covered[i] && claims[i].empty()) ++rep.targets.false_negatives;
  }
  ev.push_back({rep.survey_end_s, "edge", "detections_filtered",
                Json{{"raw_boxes", raw.size()}, {"kept_boxes", kept.size()}}});
  ev.push_back({rep.survey_end_s, "edge", "targets_ready", Json{{"targets", targets.targets.size()}}});

  std::vector<LocalPoint> pts;
  for (const auto& t : targets.targets) pts.push_back(t.position);
  const Tour nn = stage("route", [&] { return nearest_neighbor(sc.routing.robot_start, pts, sc.routing.return_to_start); });
  ImproveOptions io;
  io.max_depth = sc.routing.max_depth;
  io.time_budget_ms = sc.routing.time_budget_ms;
  io.candidates = sc.routing.candidates;
  const Tour improved = stage("route", [&] { return improve(nn, pts, io); });
  rep.heuristic = sc.routing.heuristic;
  rep.nn_length_m = nn.length_m;
  rep.improved_length_m = improved.length_m;
  if (sc.routing.oracle && pts.size() <= static_cast<std::size_t>(kBruteForceLimit)) {
    rep.oracle_length_m = stage("route", [&] {
      return brute_force_optimal(sc.routing.robot_start, pts, sc.routing.return_to_start).length_m;
    });
  }
  const Tour& route = sc.routing.heuristic == "nn" ? nn : improved;
  rep.route_length_m = route.length_m;
  rep.route_ready_s = rep.survey_end_s + sc.edge_delay_s;
  ev.push_back({rep.route_ready_s, "edge", "route_ready",
                Json{{"heuristic", rep.heuristic},
                     {"nn_length_m", rep.nn_length_m},
                     {"improved_length_m", rep.improved_length_m},
                     {"oracle_length_m", rep.oracle_length_m ? Json(*rep.oracle_length_m) : Json(nullptr)}}});

  const RobotMission mission = stage("spray", [&] {
    return plan_robot_mission(route, spray_targets, sc.verify, sc.boom, sc.robot, sc.seed, rep.route_ready_s,
                              sc.abort_at_s);
  });
  rep.spray = mission.report;
  rep.mission_end_s = mission.report.mission_end_s;
  for (const auto& s : mission.timeline.segments) {
    Json p = to_json(s);
    ev.push_back({s.t_start_s, "robot", "segment", std::move(p)});
  }
  for (const auto& v : mission.schedule.events) {
    ev.push_back({v.t_open_s, "nozzle", "open", Json{{"nozzle_id", v.nozzle_id}, {"target_ids", v.plant_ids}}});
    ev.push_back({v.t_close_s, "nozzle", "close", Json{{"nozzle_id", v.nozzle_id}, {"target_ids", v.plant_ids}}});
  }
  std::vector<std::vector<TargetOutcome>> outcome_of_plant(truth.plants.size());
  for (const auto& r : mission.results) {
    ev.push_back({r.t_pass_start_s, "robot", "target_result",
                  Json{{"target_id", r.target_id},
                       {"plant_id", r.plant_id},
                       {"outcome", to_string(r.outcome)},
                       {"volume_L", r.volume_L},
                       {"nozzles", r.nozzles}}});
    if (r.plant_id >= 0) outcome_of_plant[static_cast<std::size_t>(r.plant_id)].push_back(r.outcome);
  }
  ev.push_back({rep.mission_end_s, "robot", "mission_end",
                Json{{"volume_used_L", rep.spray.volume_used_L}, {"tank_remaining_L", rep.spray.tank_remaining_L}}});

  for (std::size_t i = 0; i < truth.plants.size(); ++i) {
    const auto& outs = outcome_of_plant[i];
    auto any = [&](TargetOutcome o) { return std::find(outs.begin(), outs.end(), o) != outs.end(); };
    const char* fate = "missed_by_verification";
    if (!covered[i]) fate = "outside_coverage";
    else if (claims[i].empty()) fate = "missed_by_detection";
    else if (any(TargetOutcome::Sprayed)) fate = "sprayed";
    else if (any(TargetOutcome::TankEmpty)) fate = "missed_by_tank";
    else if (any(TargetOutcome::Aborted)) fate = "missed_by_abort";
    ev.push_back({rep.mission_end_s, "field", "plant_fate",
                  Json{{"plant_id", truth.plants[i].id}, {"fate", fate}}});
  }

  const LinkPreset preset = stage("network", [&] { return preset_by_name(sc.network.preset); });
  rep.network_preset = preset.name;
  rep.traffic = scenario_traffic(sc, rep.survey);
  const LinkTrace up = stage("network", [&] {
    return simulate_link(preset, rep.traffic, sc.network.duration_s, sc.network.tick_s, Direction::Up);
  });
  const LinkTrace down = stage("network", [&] {
    return simulate_link(preset, rep.traffic, sc.network.duration_s, sc.network.tick_s, Direction::Down);
  });
  rep.uplink = up.summary;
  rep.downlink = down.summary;
  rep.uplink_verdict = link_verdict("uplink", up, rep.traffic, preset.uplink_mbps * 1e6);
  rep.downlink_verdict = link_verdict("downlink", down, rep.traffic, preset.downlink_mbps * 1e6);
  rep.offload_slack_s = stage("network", [&] {
    return offload_slack(sc.offload.camera_lookahead_m, sc.robot.approach_speed_mps, preset.rtt_s(),
                         sc.offload.inference_s, sc.boom.lead_m);
  });
  ev.push_back({0.0, "network", "link_summary",
                Json{{"preset", preset.name},
                     {"uplink", to_json(rep.uplink)},
                     {"uplink_verdict", rep.uplink_verdict},
                     {"downlink_verdict", rep.downlink_verdict}}});

  std::stable_sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.t_s < b.t_s; });
  rep.events = std::move(ev);
  rep.plants = fates_from_log(rep.events);
  return rep;
}

Json ScenarioReport::to_json() const {
  Json traffic_json = Json::array();
  for (const auto& s : traffic) traffic_json.push_back(source_json(s));
  return Json{
      {"schema_version", kSchemaVersion},
      {"seed", seed},
      {"effective_config", effective_config},
      {"survey", agrisim::to_json(survey)},
      {"detection",
       Json{{"raw", counts_json(raw_detections)},
            {"filtered", counts_json(filtered_detections)},
            {"targets", counts_json(targets)},
            {"duplicate_targets", duplicate_targets}}},
      {"routing",
       Json{{"heuristic", heuristic},
            {"nn_length_m", nn_length_m},
            {"improved_length_m", improved_length_m},
            {"oracle_length_m", oracle_length_m ? Json(*oracle_length_m) : Json(nullptr)},
            {"route_length_m", route_length_m}}},
      {"spray", agrisim::to_json(spray)},
      {"plants", fates_json(plants)},
      {"network",
       Json{{"preset", network_preset},
            {"traffic", traffic_json},
            {"traffic_note", "robot camera rates are configurable assumptions, not measured values"},
            {"uplink", agrisim::to_json(uplink)},
            {"downlink", agrisim::to_json(downlink)},
            {"uplink_verdict", uplink_verdict},
            {"downlink_verdict", downlink_verdict},
            {"offload_slack_s", offload_slack_s},
            {"offload_feasible", offload_slack_s >= 0.0}}},
      {"timeline",
       Json{{"survey_end_s", survey_end_s},
            {"route_ready_s", route_ready_s},
            {"mission_end_s", mission_end_s},
            {"total_s", std::max(mission_end_s, route_ready_s)}}},
      {"event_count", events.size()}};
}

std::string ScenarioReport::summary_csv() const {
  Json j = to_json();
  j.erase("effective_config");
  std::string out = "key,value\n";
  flatten(j, "", out);
  return out;
}

std::string ScenarioReport::events_jsonl() const {
  std::string out;
  for (const auto& e : events) {
    out += Json{{"t_s", e.t_s}, {"entity", e.entity}, {"kind", e.kind}, {"payload", e.payload}}.dump() + "\n";
  }
  return out;
}

std::vector<ScenarioReport> sweep(const Scenario& scenario, const std::string& parameter_path,
                                  const std::vector<Json>& values, int jobs) {
  // Every variant is built and validated before any run starts.
  std::vector<Scenario> variants;
  variants.reserve(values.size());
  for (const auto& v : values) variants.push_back(with_parameter(scenario, parameter_path, v));

  std::vector<std::optional<ScenarioReport>> slots(variants.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < variants.size(); i = next++) {
      try {
        slots[i] = run_scenario(variants[i]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n_threads = std::clamp(jobs, 1, std::max(1, static_cast<int>(variants.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<ScenarioReport> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace agrisim
