#include "agrisim/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "agrisim/error.hpp"

namespace agrisim {

namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double need_number(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) throw ValidationError(where + ": missing numeric '" + key + "'");
  return it->get<double>();
}

LocalPoint point_from(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected {east_m, north_m}");
  return {need_number(j, "east_m", where), need_number(j, "north_m", where)};
}

}  // namespace

Json to_json(const LocalPoint& p) { return Json{{"east_m", p.east_m}, {"north_m", p.north_m}}; }
Json to_json(const GeoPoint& p) { return Json{{"lat", p.lat_deg}, {"lon", p.lon_deg}}; }

Json to_json(const Track& t) {
  return Json{{"start", to_json(t.start)},
              {"end", to_json(t.end)},
              {"heading_deg", t.heading_deg},
              {"line_index", t.line_index},
              {"length_m", t.length_m()}};
}

Json to_json(const CaptureEvent& c) {
  return Json{{"image_id", c.image_id},
              {"time_s", c.time_s},
              {"track_index", c.track_index},
              {"position", to_json(c.pose.position)},
              {"altitude_agl_m", c.pose.altitude_agl_m},
              {"heading_deg", c.pose.heading_deg}};
}

Json to_json(const SurveyEstimate& e) {
  return Json{{"track_count", e.track_count},
              {"total_path_m", e.total_path_m},
              {"duration_s", e.duration_s},
              {"image_count", e.image_count},
              {"capture_interval_s", e.capture_interval_s},
              {"data_volume_bits", e.data_volume_bits},
              {"mean_capture_rate_bps", e.mean_capture_rate_bps},
              {"fpv_rate_bps", e.fpv_rate_bps}};
}

Json to_json(const GroundTruth& g) {
  Json plants = Json::array();
  for (const auto& p : g.plants) {
    plants.push_back(Json{{"id", p.id}, {"position", to_json(p.position)}, {"diameter_m", p.diameter_m}});
  }
  return Json{{"plants", plants}};
}

Json to_json(const BBox& b) {
  return Json{{"id", b.id},
              {"image_id", b.image_id},
              {"center_px", Json{{"x", b.center_px.x}, {"y", b.center_px.y}}},
              {"width_px", b.width_px},
              {"height_px", b.height_px},
              {"score", b.score},
              {"gsd_m_per_px", b.gsd_m_per_px},
              {"truth_plant_id", b.truth_plant_id}};
}

Json to_json(const TargetList& t) {
  Json targets = Json::array();
  for (const auto& x : t.targets) {
    targets.push_back(Json{{"id", x.id},
                           {"position", to_json(x.position)},
                           {"diameter_m", x.diameter_m},
                           {"confidence", x.confidence},
                           {"support", x.support},
                           {"source_images", x.source_images}});
  }
  return Json{{"merge_radius_m", t.merge_radius_m}, {"targets", targets}};
}

Json to_json(const Tour& t, const std::vector<LocalPoint>& targets) {
  Json waypoints = Json::array();
  for (int idx : t.order) {
    const auto& p = targets.at(static_cast<std::size_t>(idx));
    waypoints.push_back(Json{{"target", idx}, {"east_m", p.east_m}, {"north_m", p.north_m}});
  }
  return Json{{"start", to_json(t.start)},
              {"closed", t.closed},
              {"length_m", t.length_m},
              {"order", t.order},
              {"waypoints", waypoints}};
}

Json to_json(const ValveEvent& e) {
  return Json{{"nozzle_id", e.nozzle_id}, {"t_open_s", e.t_open_s}, {"t_close_s", e.t_close_s}, {"plant_ids", e.plant_ids}};
}

Json to_json(const SprayReport& r) {
  return Json{{"tank_initial_L", r.tank_initial_L},
              {"volume_used_L", r.volume_used_L},
              {"tank_remaining_L", r.tank_remaining_L},
              {"plants_sprayed", r.plants_sprayed},
              {"plants_missed", r.plants_missed},
              {"missed_for_tank", r.missed_for_tank},
              {"false_sprays", r.false_sprays},
              {"rejected_false_targets", r.rejected_false_targets},
              {"outside_boom", r.outside_boom},
              {"aborted", r.aborted},
              {"volume_by_nozzle_L", r.volume_by_nozzle_L},
              {"mission_start_s", r.mission_start_s},
              {"mission_end_s", r.mission_end_s},
              {"drive_distance_m", r.drive_distance_m}};
}

Json to_json(const TimelineSegment& s) {
  return Json{{"mode", to_string(s.mode)},  {"target_id", s.target_id}, {"from", to_json(s.from)},
              {"to", to_json(s.to)},        {"speed_mps", s.speed_mps}, {"t_start_s", s.t_start_s},
              {"t_end_s", s.t_end_s}};
}

Json to_json(const LinkPreset& p) {
  return Json{{"name", p.name}, {"downlink_mbps", p.downlink_mbps}, {"uplink_mbps", p.uplink_mbps}, {"latency_ms", p.latency_ms}};
}

Json to_json(const LinkSummary& s) {
  return Json{{"capacity_bps", s.capacity_bps},
              {"offered_mean_bps", s.offered_mean_bps},
              {"mean_utilization", s.mean_utilization},
              {"peak_backlog_bits", s.peak_backlog_bits},
              {"final_backlog_bits", s.final_backlog_bits},
              {"max_queue_delay_s", s.max_queue_delay_s},
              {"backlog_slope_bps", s.backlog_slope_bps},
              {"saturated", s.saturated},
              {"saturation_onset_s", s.saturation_onset_s ? Json(*s.saturation_onset_s) : Json(nullptr)}};
}

GroundTruth ground_truth_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("plants") || !j["plants"].is_array()) {
    throw ValidationError("ground truth: expected {\"plants\": [...]}");
  }
  GroundTruth g;
  for (const auto& p : j["plants"]) {
    Plant plant;
    plant.id = p.value("id", static_cast<int>(g.plants.size()));
    plant.position = point_from(p.at("position"), "ground truth plant");
    plant.diameter_m = need_number(p, "diameter_m", "ground truth plant");
    g.plants.push_back(plant);
  }
  return g;
}

TargetList targets_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("targets") || !j["targets"].is_array()) {
    throw ValidationError("target list: expected {\"targets\": [...]}");
  }
  TargetList t;
  t.merge_radius_m = j.value("merge_radius_m", t.merge_radius_m);
  for (const auto& x : j["targets"]) {
    Target tg;
    tg.id = static_cast<int>(t.targets.size());
    tg.position = point_from(x.at("position"), "target");
    tg.diameter_m = x.value("diameter_m", 0.1);
    tg.confidence = x.value("confidence", 1.0);
    if (x.contains("support")) tg.support = x["support"].get<std::vector<int>>();
    if (x.contains("source_images")) tg.source_images = x["source_images"].get<std::vector<int>>();
    t.targets.push_back(std::move(tg));
  }
  return t;
}

std::string csv_comment(const Json& j) { return "# " + j.dump() + "\n"; }

std::string targets_csv(const TargetList& t) {
  std::string out = "east,north,support_count\n";
  for (const auto& x : t.targets) {
    out += fmt_num(x.position.east_m) + "," + fmt_num(x.position.north_m) + "," + std::to_string(x.support.size()) + "\n";
  }
  return out;
}

std::string valve_schedule_csv(const ValveSchedule& s) {
  std::string out = "nozzle_id,t_open,t_close,plant_id\n";
  for (const auto& e : s.events) {
    std::string ids;
    for (std::size_t i = 0; i < e.plant_ids.size(); ++i) ids += (i ? ";" : "") + std::to_string(e.plant_ids[i]);
    out += std::to_string(e.nozzle_id) + "," + fmt_num(e.t_open_s) + "," + fmt_num(e.t_close_s) + "," + ids + "\n";
  }
  return out;
}

std::string link_trace_csv(const LinkTrace& t) {
  std::string out = "t,offered,served,backlog,delay\n";
  for (const auto& k : t.ticks) {
    out += fmt_num(k.t_s) + "," + fmt_num(k.offered_bps) + "," + fmt_num(k.served_bps) + "," + fmt_num(k.backlog_bits) +
           "," + fmt_num(k.queue_delay_s) + "\n";
  }
  return out;
}

TargetList targets_from_csv(const std::string& text) {
  TargetList t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const bool header_allowed = first_row;
    first_row = false;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (cols.size() < 2) throw ValidationError("targets CSV line " + std::to_string(lineno) + ": need east,north");
    Target tg;
    try {
      tg.position.east_m = std::stod(cols[0]);
      tg.position.north_m = std::stod(cols[1]);
    } catch (const std::exception&) {
      if (header_allowed) continue;
      throw ValidationError("targets CSV line " + std::to_string(lineno) + ": non-numeric coordinate");
    }
    tg.id = static_cast<int>(t.targets.size());
    tg.diameter_m = 0.1;
    tg.confidence = 1.0;
    t.targets.push_back(std::move(tg));
  }
  return t;
}

}  // namespace agrisim
