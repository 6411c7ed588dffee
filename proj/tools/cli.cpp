#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "agrisim/engine.hpp"
#include "agrisim/error.hpp"
#include "agrisim/field.hpp"
#include "agrisim/mission.hpp"
#include "agrisim/netsim.hpp"
#include "agrisim/route.hpp"
#include "agrisim/scenario.hpp"
#include "agrisim/serialize.hpp"
#include "agrisim/sprayer.hpp"

namespace agrisim::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-s,--scenario", c.scenario_path, "scenario JSON file (defaults apply when omitted)");
  cmd->add_option("--seed", c.seed, "override the scenario seed");
  cmd->add_option("--set", c.overrides, "override a scalar, e.g. --set survey.speed_mps=4");
}

Json parse_value(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    return Json(text);
  }
}

Scenario load(const Common& c) {
  Scenario s = c.scenario_path.empty() ? Scenario{} : load_scenario(c.scenario_path);
  for (const auto& o : c.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects path=value, got '" + o + "'");
    s = with_parameter(s, o.substr(0, eq), parse_value(o.substr(eq + 1)));
  }
  if (c.seed) s.seed = *c.seed;
  s.validate();
  return s;
}

Json provenance(const Scenario& s) { return Json{{"seed", s.seed}, {"effective_config", to_json(s)}}; }

// Output documents lead with schema version, seed and effective config.
Json document(const Scenario& s, const char* kind) {
  return Json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"seed", s.seed}, {"effective_config", to_json(s)}};
}

void write_file(const std::string& path, const std::string& body) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << body;
  if (!f) throw Error("write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(std::ostream& out, const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    out << body;
  } else {
    write_file(path, body);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string num(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

void table(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  for (const auto& [k, v] : rows) out << "  " << k << std::string(w - k.size() + 2, ' ') << v << "\n";
}

struct Survey {
  FieldPolygon field;
  SurveyPlan plan;
  CaptureSchedule captures;
  SurveyEstimate estimate;
};

Survey survey(const Scenario& s) {
  Survey v;
  v.field = FieldPolygon(s.field);
  v.plan = plan_coverage(v.field, s.survey.track_spacing_m, s.survey.altitude_m, s.survey.speed_mps,
                         s.survey.sweep_heading_deg, s.survey.turn_time_s);
  v.captures = capture_schedule(v.plan, s.camera, s.survey.overlap, s.origin);
  v.estimate = survey_estimate(v.plan, v.captures, s.survey.image_size_bits, s.survey.fpv_rate_bps);
  return v;
}

GroundTruth truth_for(const Scenario& s, const FieldPolygon& field) {
  return s.plants.count ? generate_field_count(s.seed, field, *s.plants.count, s.plants.diameter_mean_m,
                                               s.plants.diameter_sigma_m)
                        : generate_field(s.seed, field, s.plants.density_per_ha, s.plants.diameter_mean_m,
                                         s.plants.diameter_sigma_m);
}

TargetList load_targets(const std::string& path) {
  const std::string text = read_file(path);
  if (fs::path(path).extension() == ".csv") return targets_from_csv(text);
  try {
    const Json j = Json::parse(text);
    return targets_from_json(j.contains("target_list") ? j["target_list"] : j);
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<LocalPoint> positions(const TargetList& t) {
  std::vector<LocalPoint> p;
  for (const auto& x : t.targets) p.push_back(x.position);
  return p;
}

ImproveOptions improve_options(const RoutingConfig& r) {
  ImproveOptions o;
  o.max_depth = r.max_depth;
  o.time_budget_ms = r.time_budget_ms;
  o.candidates = r.candidates;
  return o;
}

// ---- subcommands ----

int plan_survey(const Common& c, const std::string& out_path, std::ostream& out) {
  const Scenario s = load(c);
  const Survey v = survey(s);
  std::string lines = Json{{"type", "header"}, {"schema_version", kSchemaVersion}, {"seed", s.seed},
                           {"effective_config", to_json(s)}}
                          .dump() +
                      "\n";
  for (const auto& t : v.plan.tracks) {
    Json j = to_json(t);
    j["type"] = "track";
    lines += j.dump() + "\n";
  }
  for (const auto& e : v.captures.events) {
    Json j = to_json(e);
    j["type"] = "capture";
    lines += j.dump() + "\n";
  }
  Json est = to_json(v.estimate);
  est["type"] = "estimate";
  lines += est.dump() + "\n";
  if (out_path.empty()) {
    out << lines;
    return kOk;
  }
  write_file(out_path, lines);
  const auto& e = v.estimate;
  out << "survey estimate (seed " << s.seed << ")\n";
  table(out, {{"field area", num(v.field.area_m2() / 1e4, 4) + " ha"},
              {"tracks", std::to_string(e.track_count)},
              {"path length", num(e.total_path_m, 1) + " m"},
              {"duration", num(e.duration_s, 1) + " s (" + num(e.duration_s / 60.0, 2) + " min)"},
              {"images", std::to_string(e.image_count)},
              {"capture interval", num(e.capture_interval_s, 4) + " s"},
              {"data volume", num(e.data_volume_bits / 8e9, 2) + " GB"},
              {"mean capture rate", num(e.mean_capture_rate_bps / 1e6, 2) + " Mbit/s"},
              {"fpv rate", num(e.fpv_rate_bps / 1e6, 2) + " Mbit/s"},
              {"turn time", num(s.survey.turn_time_s, 1) + " s per turn (calibration parameter)"}});
  return kOk;
}

int gen_field(const Common& c, const std::string& out_path, std::ostream& out) {
  const Scenario s = load(c);
  const FieldPolygon field(s.field);
  Json doc = document(s, "ground_truth");
  doc["ground_truth"] = to_json(truth_for(s, field));
  emit(out, out_path, dump(doc));
  return kOk;
}

int detect(const Common& c, const std::string& truth_path, const std::string& out_path, const std::string& csv_path,
           std::ostream& out) {
  const Scenario s = load(c);
  const Survey v = survey(s);
  GroundTruth truth;
  if (truth_path.empty()) {
    truth = truth_for(s, v.field);
  } else {
    Json j;
    try {
      j = Json::parse(read_file(truth_path));
    } catch (const Json::parse_error& e) {
      throw ValidationError("'" + truth_path + "' is not valid JSON: " + e.what());
    }
    truth = ground_truth_from_json(j.contains("ground_truth") ? j["ground_truth"] : j);
  }
  const auto raw = simulate_detections(truth, v.captures.events, s.camera, s.detector, s.seed, s.origin);
  const auto kept = filter_boxes(raw, s.filter.min_area_m2, s.filter.min_area_to_length_m);
  const auto targets = georef_and_merge(kept, v.captures.events, s.camera, s.merge_radius_m, s.origin);
  Json doc = document(s, "target_list");
  doc["counts"] = Json{{"plants", truth.plants.size()},
                       {"images", v.captures.events.size()},
                       {"raw_boxes", raw.size()},
                       {"kept_boxes", kept.size()},
                       {"targets", targets.targets.size()}};
  doc["target_list"] = to_json(targets);
  emit(out, out_path, dump(doc));
  if (!csv_path.empty()) write_file(csv_path, csv_comment(provenance(s)) + targets_csv(targets));
  return kOk;
}

int optimize_route(const Common& c, const std::string& targets_path, const std::string& heuristic, bool return_to_start,
                   const std::string& out_path, std::ostream& out) {
  Scenario s = load(c);
  if (return_to_start) s.routing.return_to_start = true;
  const TargetList targets = load_targets(targets_path);
  const auto pts = positions(targets);
  const Tour nn = nearest_neighbor(s.routing.robot_start, pts, s.routing.return_to_start);
  Json doc = document(s, "route");
  doc["targets_file"] = targets_path;
  doc["target_count"] = pts.size();
  doc["heuristic"] = heuristic;
  doc["return_to_start"] = s.routing.return_to_start;
  doc["nn_length_m"] = nn.length_m;
  Tour chosen = nn;
  if (heuristic != "nn") {
    const Tour lk = improve(nn, pts, improve_options(s.routing));
    doc["improved_length_m"] = lk.length_m;
    chosen = lk;
  }
  if (heuristic == "both") doc["nn_tour"] = to_json(nn, pts);
  if (s.routing.oracle && pts.size() <= static_cast<std::size_t>(kBruteForceLimit)) {
    doc["oracle_length_m"] = brute_force_optimal(s.routing.robot_start, pts, s.routing.return_to_start).length_m;
  }
  doc["tour"] = to_json(chosen, pts);
  emit(out, out_path, dump(doc));
  return kOk;
}

int spray_plan(const Common& c, const std::string& targets_path, const std::string& out_path,
               const std::string& csv_path, std::ostream& out) {
  const Scenario s = load(c);
  const TargetList targets = load_targets(targets_path);
  const auto pts = positions(targets);
  Tour tour = nearest_neighbor(s.routing.robot_start, pts, s.routing.return_to_start);
  if (s.routing.heuristic == "lk") tour = improve(tour, pts, improve_options(s.routing));
  std::vector<SprayTarget> st;
  for (const auto& t : targets.targets) st.push_back(SprayTarget::assumed_real(t.id, t.position, t.diameter_m));
  const RobotMission m = plan_robot_mission(tour, st, s.verify, s.boom, s.robot, s.seed, 0.0, s.abort_at_s);
  Json doc = document(s, "spray_plan");
  doc["targets_file"] = targets_path;
  doc["route"] = to_json(tour, pts);
  doc["report"] = to_json(m.report);
  Json segs = Json::array();
  for (const auto& seg : m.timeline.segments) segs.push_back(to_json(seg));
  doc["timeline"] = segs;
  Json valves = Json::array();
  for (const auto& e : m.schedule.events) valves.push_back(to_json(e));
  doc["valve_schedule"] = valves;
  const auto layout = boom_layout(s.boom);
  if (layout.inconsistent_geometry) doc["warnings"] = Json::array({*layout.inconsistent_geometry});
  emit(out, out_path, dump(doc));
  if (!csv_path.empty()) write_file(csv_path, csv_comment(provenance(s)) + valve_schedule_csv(m.schedule));
  return kOk;
}

int netcheck(const Common& c, const std::string& preset_name, const std::string& out_path,
             const std::string& trace_path, std::ostream& out) {
  const Scenario s = load(c);
  const Survey v = survey(s);
  const auto sources = scenario_traffic(s, v.estimate);
  std::vector<LinkPreset> list;
  if (preset_name.empty()) {
    list = presets();
  } else {
    list.push_back(preset_by_name(preset_name));
  }
  Json doc = document(s, "netcheck");
  Json traffic = Json::array();
  for (const auto& src : sources) {
    traffic.push_back(Json{{"name", src.name}, {"direction", to_string(src.direction)}, {"mean_rate_bps", src.mean_rate_bps()}});
  }
  doc["traffic"] = traffic;
  doc["traffic_note"] = "robot camera rates are configurable assumptions, not measured values";
  doc["latency_note"] = "preset latency is treated as round-trip time";
  Json results = Json::array();
  for (const auto& p : list) {
    const auto up = simulate_link(p, sources, s.network.duration_s, s.network.tick_s, Direction::Up);
    const auto down = simulate_link(p, sources, s.network.duration_s, s.network.tick_s, Direction::Down);
    const std::string uv = link_verdict("uplink", up, sources, p.uplink_mbps * 1e6);
    const std::string dv = link_verdict("downlink", down, sources, p.downlink_mbps * 1e6);
    const double slack = offload_slack(s.offload.camera_lookahead_m, s.robot.approach_speed_mps, p.rtt_s(),
                                       s.offload.inference_s, s.boom.lead_m);
    out << p.name << ": " << uv << " (offered " << num(up.summary.offered_mean_bps / 1e6, 1) << " of "
        << num(p.uplink_mbps, 0) << " Mbit/s), " << dv << ", offload slack " << num(slack, 3) << " s\n";
    results.push_back(Json{{"preset", to_json(p)},
                           {"uplink_verdict", uv},
                           {"downlink_verdict", dv},
                           {"uplink", to_json(up.summary)},
                           {"downlink", to_json(down.summary)},
                           {"offload_slack_s", slack}});
    if (!trace_path.empty() && list.size() == 1) {
      write_file(trace_path, csv_comment(provenance(s)) + link_trace_csv(up));
    }
  }
  doc["results"] = results;
  if (!out_path.empty()) write_file(out_path, dump(doc));
  return kOk;
}

void write_report(const ScenarioReport& r, const std::string& dir) {
  write_file((fs::path(dir) / "report.json").string(), dump(r.to_json()));
  write_file((fs::path(dir) / "summary.csv").string(),
             csv_comment(Json{{"seed", r.seed}, {"effective_config", r.effective_config}}) + r.summary_csv());
  write_file((fs::path(dir) / "events.jsonl").string(),
             Json{{"t_s", 0.0}, {"entity", "run"}, {"kind", "config"},
                  {"payload", Json{{"seed", r.seed}, {"effective_config", r.effective_config}}}}
                     .dump() +
                 "\n" + r.events_jsonl());
}

void print_summary(const Json& rep, std::ostream& out) {
  auto g = [&](const char* a, const char* b) -> const Json& { return rep.at(a).at(b); };
  const Json& oracle = g("routing", "oracle_length_m");
  out << "scenario report (seed " << rep.at("seed").get<std::uint64_t>() << ")\n";
  table(out,
        {{"survey duration", num(g("survey", "duration_s").get<double>() / 60.0, 2) + " min, " +
                                 std::to_string(g("survey", "image_count").get<int>()) + " images"},
         {"mean capture rate", num(g("survey", "mean_capture_rate_bps").get<double>() / 1e6, 2) + " Mbit/s"},
         {"targets (TP/FP/FN)", std::to_string(rep["detection"]["targets"]["true_positives"].get<int>()) + "/" +
                                    std::to_string(rep["detection"]["targets"]["false_positives"].get<int>()) + "/" +
                                    std::to_string(rep["detection"]["targets"]["false_negatives"].get<int>())},
         {"route NN / improved", num(g("routing", "nn_length_m").get<double>(), 1) + " m / " +
                                     num(g("routing", "improved_length_m").get<double>(), 1) + " m" +
                                     (oracle.is_null() ? "" : " (oracle " + num(oracle.get<double>(), 1) + " m)")},
         {"plants", std::to_string(g("plants", "total").get<int>()) + " total, " +
                        std::to_string(g("plants", "sprayed").get<int>()) + " sprayed, " +
                        std::to_string(g("plants", "missed_by_detection").get<int>()) + " missed by detection, " +
                        std::to_string(g("plants", "missed_by_verification").get<int>()) + " by verification, " +
                        std::to_string(g("plants", "missed_by_tank").get<int>()) + " by tank, " +
                        std::to_string(g("plants", "outside_coverage").get<int>()) + " outside coverage, " +
                        std::to_string(g("plants", "missed_by_abort").get<int>()) + " by abort"},
         {"herbicide used", num(g("spray", "volume_used_L").get<double>() * 1000.0, 1) + " ml of " +
                                num(g("spray", "tank_initial_L").get<double>(), 1) + " L"},
         {"network", g("network", "preset").get<std::string>() + ": " + g("network", "uplink_verdict").get<std::string>() +
                         ", " + g("network", "downlink_verdict").get<std::string>()},
         {"offload slack", num(g("network", "offload_slack_s").get<double>(), 3) + " s"},
         {"operation ends", num(g("timeline", "total_s").get<double>(), 1) + " s"}});
}

int simulate(const Common& c, const std::string& out_dir, std::ostream& out) {
  const ScenarioReport r = run_scenario(load(c));
  if (out_dir.empty()) {
    out << dump(r.to_json());
    return kOk;
  }
  write_report(r, out_dir);
  print_summary(r.to_json(), out);
  return kOk;
}

std::vector<Json> split_values(const std::string& list) {
  std::vector<Json> out;
  if (list.empty()) return out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_value(item));
  return out;
}

int run_sweep(const Common& c, const std::string& param, const std::string& values, int jobs,
              const std::string& out_dir, std::ostream& out) {
  const Scenario s = load(c);
  if (jobs < 1) throw ValidationError("--jobs must be >= 1");
  const auto vals = split_values(values);
  const auto reports = sweep(s, param, vals, jobs);
  Json doc = document(s, "sweep");
  doc["parameter"] = param;
  doc["values"] = vals;
  Json runs = Json::array();
  std::string csv = csv_comment(provenance(s)) +
                    "value,plants,sprayed,targets,route_length_m,volume_used_L,survey_duration_s,mission_end_s,"
                    "uplink_verdict,uplink_utilization\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    Json rj = r.to_json();
    rj.erase("effective_config");
    runs.push_back(Json{{"value", vals[i]}, {"report", rj}});
    csv += (vals[i].is_string() ? vals[i].get<std::string>() : vals[i].dump()) + "," + std::to_string(r.plants.total) +
           "," + std::to_string(r.plants.sprayed) + "," +
           std::to_string(r.targets.true_positives + r.targets.false_positives + r.duplicate_targets) + "," +
           num(r.route_length_m, 6) + "," + num(r.spray.volume_used_L, 9) + "," + num(r.survey.duration_s, 6) + "," +
           num(r.mission_end_s, 6) + "," + r.uplink_verdict + "," + num(r.uplink.mean_utilization, 6) + "\n";
  }
  doc["runs"] = runs;
  if (out_dir.empty()) {
    out << dump(doc);
    return kOk;
  }
  write_file((fs::path(out_dir) / "sweep.json").string(), dump(doc));
  write_file((fs::path(out_dir) / "sweep.csv").string(), csv);
  out << "sweep of " << param << ": " << reports.size() << " runs written to " << out_dir << "\n";
  return kOk;
}

int report(const std::string& input, const std::string& format, std::ostream& out) {
  Json rep;
  try {
    rep = Json::parse(read_file(input));
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + input + "' is not valid JSON: " + e.what());
  }
  if (!rep.contains("survey") || !rep.contains("plants")) throw ValidationError("'" + input + "' is not a scenario report");
  if (format == "json") {
    out << dump(rep);
  } else {
    try {
      print_summary(rep, out);
    } catch (const Json::exception& e) {
      throw ValidationError("'" + input + "' is missing report fields: " + e.what());
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"agrisim: survey, detection, routing, spraying and network simulation for UAV-guided weed control"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("agrisim schema ") + std::to_string(kSchemaVersion));

  Common common;
  std::string out_path, csv_path, truth_path, targets_path, heuristic = "both", preset, trace_path, param, values,
                                                                format = "text";
  bool return_to_start = false;
  int jobs = 1;

  auto* ps = app.add_subcommand("plan-survey", "coverage plan and capture schedule as JSON lines");
  add_common(ps, common);
  ps->add_option("-o,--out", out_path, "JSON-lines output file; an estimate table goes to stdout");

  auto* gf = app.add_subcommand("gen-field", "synthesize ground-truth plants");
  add_common(gf, common);
  gf->add_option("-o,--out", out_path, "output JSON file");

  auto* dt = app.add_subcommand("detect", "simulate detections, filter boxes and merge targets");
  add_common(dt, common);
  dt->add_option("--truth", truth_path, "ground truth JSON (generated from the scenario when omitted)");
  dt->add_option("-o,--out", out_path, "target list JSON file");
  dt->add_option("--csv", csv_path, "target list CSV file (east,north,support_count)");

  auto* orr = app.add_subcommand("optimize-route", "open tour through targets");
  add_common(orr, common);
  orr->add_option("-t,--targets", targets_path, "target list (.csv or .json)")->required();
  orr->add_option("--heuristic", heuristic, "nn, lk or both")->check(CLI::IsMember({"nn", "lk", "both"}));
  orr->add_flag("--return-to-start", return_to_start, "close the tour at the start position");
  orr->add_option("-o,--out", out_path, "output JSON file");

  auto* sp = app.add_subcommand("spray-plan", "robot timeline and valve schedule for a target list");
  add_common(sp, common);
  sp->add_option("-t,--targets", targets_path, "target list (.csv or .json)")->required();
  sp->add_option("-o,--out", out_path, "output JSON file");
  sp->add_option("--csv", csv_path, "valve schedule CSV (nozzle_id,t_open,t_close,plant_id)");

  auto* nc = app.add_subcommand("netcheck", "uplink/downlink feasibility per network preset");
  add_common(nc, common);
  nc->add_option("--preset", preset, "check one preset only");
  nc->add_option("-o,--out", out_path, "detailed JSON output file");
  nc->add_option("--trace", trace_path, "uplink trace CSV (requires --preset)");

  auto* sim = app.add_subcommand("simulate", "run the full scenario");
  add_common(sim, common);
  sim->add_option("-o,--out-dir", out_path, "directory for report.json, summary.csv and events.jsonl");

  auto* sw = app.add_subcommand("sweep", "run the scenario once per value of one parameter");
  add_common(sw, common);
  sw->add_option("-p,--param", param, "dotted parameter path, e.g. plants.density_per_ha")->required();
  sw->add_option("-v,--values", values, "comma-separated values")->required();
  sw->add_option("-j,--jobs", jobs, "parallel runs");
  sw->add_option("-o,--out-dir", out_path, "directory for sweep.json and sweep.csv");

  auto* rp = app.add_subcommand("report", "print a saved scenario report");
  rp->add_option("-i,--input", truth_path, "report.json written by simulate")->required();
  rp->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*ps) return plan_survey(common, out_path, out);
    if (*gf) return gen_field(common, out_path, out);
    if (*dt) return detect(common, truth_path, out_path, csv_path, out);
    if (*orr) return optimize_route(common, targets_path, heuristic, return_to_start, out_path, out);
    if (*sp) return spray_plan(common, targets_path, out_path, csv_path, out);
    if (*nc) {
      if (!trace_path.empty() && preset.empty()) throw ValidationError("--trace requires --preset");
      return netcheck(common, preset, out_path, trace_path, out);
    }
    if (*sim) return simulate(common, out_path, out);
    if (*sw) return run_sweep(common, param, values, jobs, out_path, out);
    if (*rp) return report(truth_path, format, out);
  } catch (const StageError& e) {
    err << (e.is_validation() ? "invalid input in stage " : "error in stage ") << e.what() << "\n";
    return e.is_validation() ? kValidation : kRuntime;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kRuntime;
}

}  // namespace agrisim::cli
