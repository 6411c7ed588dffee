#include "agrisim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "agrisim/error.hpp"
#include "agrisim/mission.hpp"

namespace agrisim {

namespace {

// Both directions of the JSON mapping go through one field list per struct,
// so reading and writing cannot drift apart.
class Writer {
 public:
  explicit Writer(Json& j) : j_(j) {}
  template <class T>
  void operator()(const char* key, const T& v) {
    j_[key] = encode(v);
  }

  static Json encode(double v) { return v; }
  static Json encode(int v) { return v; }
  static Json encode(bool v) { return v; }
  static Json encode(std::uint64_t v) { return v; }
  static Json encode(const std::string& v) { return v; }
  static Json encode(const LocalPoint& p) { return Json{{"east_m", p.east_m}, {"north_m", p.north_m}}; }
  static Json encode(const GeoPoint& p) { return Json{{"lat", p.lat_deg}, {"lon", p.lon_deg}}; }
  template <class T>
  static Json encode(const std::optional<T>& v) {
    return v ? encode(*v) : Json(nullptr);
  }
  template <class T>
  static Json encode(const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(encode(x));
    return a;
  }

 private:
  Json& j_;
};

class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ValidationError(where_ + ": expected a JSON object");
  }

  template <class T>
  void operator()(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    decode(*it, out, where_ + "." + key);
  }

  void mark(const char* key) { seen_.insert(key); }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ValidationError(where_ + ": unknown key '" + k + "'");
    }
  }

  static void decode(const Json& j, double& out, const std::string& w) {
    if (!j.is_number()) throw ValidationError(w + ": expected a number");
    out = j.get<double>();
    if (!std::isfinite(out)) throw ValidationError(w + ": expected a finite number");
  }
  static void decode(const Json& j, int& out, const std::string& w) {
    if (!j.is_number_integer()) throw ValidationError(w + ": expected an integer");
    out = j.get<int>();
  }
  static void decode(const Json& j, std::uint64_t& out, const std::string& w) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
      throw ValidationError(w + ": expected a non-negative integer");
    }
    out = j.get<std::uint64_t>();
  }
  static void decode(const Json& j, bool& out, const std::string& w) {
    if (!j.is_boolean()) throw ValidationError(w + ": expected true or false");
    out = j.get<bool>();
  }
  static void decode(const Json& j, std::string& out, const std::string& w) {
    if (!j.is_string()) throw ValidationError(w + ": expected a string");
    out = j.get<std::string>();
  }
  static void decode(const Json& j, LocalPoint& out, const std::string& w) {
    Reader r(j, w);
    r("east_m", out.east_m);
    r("north_m", out.north_m);
    r.finish();
  }
  static void decode(const Json& j, GeoPoint& out, const std::string& w) {
    Reader r(j, w);
    r("lat", out.lat_deg);
    r("lon", out.lon_deg);
    r.finish();
  }
  template <class T>
  static void decode(const Json& j, std::optional<T>& out, const std::string& w) {
    if (j.is_null()) {
      out.reset();
      return;
    }
    T v{};
    decode(j, v, w);
    out = v;
  }
  template <class T>
  static void decode(const Json& j, std::vector<T>& out, const std::string& w) {
    if (!j.is_array()) throw ValidationError(w + ": expected an array");
    out.clear();
    for (std::size_t i = 0; i < j.size(); ++i) {
      T v{};
      decode(j[i], v, w + "[" + std::to_string(i) + "]");
      out.push_back(v);
    }
  }

 private:
  const Json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

template <class S, class V>
void fields(S& p, V& v, PlantModel*) {
  v("density_per_ha", p.density_per_ha);
  v("count", p.count);
  v("diameter_mean_m", p.diameter_mean_m);
  v("diameter_sigma_m", p.diameter_sigma_m);
}
template <class S, class V>
void fields(S& c, V& v, CameraModel*) {
  v("width_px", c.width_px);
  v("height_px", c.height_px);
  v("gsd_m_per_px_at_ref", c.gsd_m_per_px_at_ref);
  v("ref_altitude_m", c.ref_altitude_m);
}
template <class S, class V>
void fields(S& s, V& v, SurveyParams*) {
  v("altitude_m", s.altitude_m);
  v("speed_mps", s.speed_mps);
  v("track_spacing_m", s.track_spacing_m);
  v("overlap", s.overlap);
  v("sweep_heading_deg", s.sweep_heading_deg);
  v("turn_time_s", s.turn_time_s);
  v("image_size_bits", s.image_size_bits);
  v("fpv_rate_bps", s.fpv_rate_bps);
}
template <class S, class V>
void fields(S& d, V& v, DetectorModel*) {
  v("detection_prob", d.detection_prob);
  v("false_positives_per_image", d.false_positives_per_image);
  v("position_noise_sigma_m", d.position_noise_sigma_m);
  v("bbox_size_noise", d.bbox_size_noise);
  v("fp_diameter_mean_m", d.fp_diameter_mean_m);
  v("fp_diameter_sigma_m", d.fp_diameter_sigma_m);
}
template <class S, class V>
void fields(S& f, V& v, FilterParams*) {
  v("min_area_m2", f.min_area_m2);
  v("min_area_to_length_m", f.min_area_to_length_m);
}
template <class S, class V>
void fields(S& r, V& v, RoutingConfig*) {
  v("heuristic", r.heuristic);
  v("max_depth", r.max_depth);
  v("time_budget_ms", r.time_budget_ms);
  v("candidates", r.candidates);
  v("return_to_start", r.return_to_start);
  v("robot_start", r.robot_start);
  v("oracle", r.oracle);
}
template <class S, class V>
void fields(S& b, V& v, BoomConfig*) {
  v("nozzle_count", b.nozzle_count);
  v("working_width_m", b.working_width_m);
  v("nozzle_spray_width_m", b.nozzle_spray_width_m);
  v("nozzle_overlap_m", b.nozzle_overlap_m);
  v("working_height_m", b.working_height_m);
  v("flow_ml_per_s", b.flow_ml_per_s);
  v("pressure_bar", b.pressure_bar);
  v("lead_m", b.lead_m);
  v("lag_m", b.lag_m);
  v("valve_latency_s", b.valve_latency_s);
  v("aim_offset_m", b.aim_offset_m);
}
template <class S, class V>
void fields(S& r, V& v, RobotConfig*) {
  v("transit_speed_mps", r.transit_speed_mps);
  v("approach_speed_mps", r.approach_speed_mps);
  v("slow_zone_radius_m", r.slow_zone_radius_m);
  v("pass_run_in_m", r.pass_run_in_m);
  v("pass_run_out_m", r.pass_run_out_m);
  v("tank_L", r.tank_L);
  v("required_dose_ml", r.required_dose_ml);
}
template <class S, class V>
void fields(S& m, V& v, VerifyModel*) {
  v("p_confirm", m.p_confirm);
  v("p_false_spray", m.p_false_spray);
  v("lateral_sigma_m", m.lateral_sigma_m);
}
template <class S, class V>
void fields(S& n, V& v, NetworkConfig*) {
  v("preset", n.preset);
  v("tick_s", n.tick_s);
  v("duration_s", n.duration_s);
  v("camera_traffic", n.camera_traffic);
  v("robot_camera_streams", n.robot_camera_streams);
  v("robot_camera_rate_bps", n.robot_camera_rate_bps);
  v("downlink_control_bps", n.downlink_control_bps);
}
template <class S, class V>
void fields(S& o, V& v, OffloadConfig*) {
  v("camera_lookahead_m", o.camera_lookahead_m);
  v("inference_s", o.inference_s);
}

template <class T>
Json encode_struct(const T& value) {
  Json j = Json::object();
  Writer w(j);
  fields(value, w, static_cast<T*>(nullptr));
  return j;
}

template <class T>
void decode_struct(const Json& j, T& out, const std::string& where) {
  Reader r(j, where);
  fields(out, r, static_cast<T*>(nullptr));
  r.finish();
}

}  // namespace

void Scenario::validate() const {
  agrisim::validate(origin);
  const FieldPolygon poly(field);
  if (!(plants.density_per_ha >= 0.0)) throw ValidationError("plants.density_per_ha must be >= 0");
  if (plants.count && *plants.count < 0) throw ValidationError("plants.count must be >= 0");
  if (!(plants.diameter_mean_m > 0.0) || !(plants.diameter_sigma_m >= 0.0)) {
    throw ValidationError("plants.diameter_mean_m must be > 0 and diameter_sigma_m >= 0");
  }
  camera.validate();
  if (!(survey.altitude_m > 0.0) || !(survey.speed_mps > 0.0) || !(survey.track_spacing_m > 0.0)) {
    throw ValidationError("survey altitude, speed and spacing must be positive");
  }
  if (!(survey.overlap >= 0.0 && survey.overlap < 1.0)) throw ValidationError("survey.overlap must be in [0, 1)");
  if (!(survey.turn_time_s >= 0.0) || !(survey.image_size_bits >= 0.0) || !(survey.fpv_rate_bps >= 0.0)) {
    throw ValidationError("survey turn time and traffic figures must be >= 0");
  }
  if (poly.area_m2() < survey.track_spacing_m * survey.track_spacing_m) {
    throw DegeneratePolygon("field area is below track_spacing^2");
  }
  detector.validate();
  if (!(filter.min_area_m2 >= 0.0) || !(filter.min_area_to_length_m >= 0.0)) {
    throw ValidationError("filter thresholds must be >= 0");
  }
  if (!(merge_radius_m >= 0.0)) throw ValidationError("merge_radius_m must be >= 0");
  if (routing.heuristic != "nn" && routing.heuristic != "lk") {
    throw ValidationError("routing.heuristic must be 'nn' or 'lk'");
  }
  if (routing.max_depth < 2 || routing.candidates < 1) {
    throw ValidationError("routing.max_depth must be >= 2 and candidates >= 1");
  }
  boom.validate();
  robot.validate();
  if (!(robot.tank_L > 0.0)) throw EmptyTankAtStart("robot.tank_L must be positive");
  verify.validate();
  preset_by_name(network.preset);
  if (!(network.tick_s > 0.0 && network.tick_s <= 0.1) || !(network.duration_s > 0.0)) {
    throw ValidationError("network.tick_s must be in (0, 0.1] and duration_s > 0");
  }
  if (network.camera_traffic != "constant" && network.camera_traffic != "burst") {
    throw ValidationError("network.camera_traffic must be 'constant' or 'burst'");
  }
  if (network.robot_camera_streams < 0 || !(network.robot_camera_rate_bps >= 0.0) ||
      !(network.downlink_control_bps >= 0.0)) {
    throw ValidationError("network traffic assumptions must be >= 0");
  }
  if (!(offload.camera_lookahead_m >= 0.0) || !(offload.inference_s >= 0.0)) {
    throw ValidationError("offload lookahead and inference time must be >= 0");
  }
  if (!(edge_delay_s >= 0.0)) throw ValidationError("edge_delay_s must be >= 0");
  if (abort_at_s && !(*abort_at_s >= 0.0)) throw ValidationError("abort_at_s must be >= 0");
}

Json to_json(const Scenario& s) {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  j["seed"] = s.seed;
  j["origin"] = Writer::encode(s.origin);
  j["field_vertices"] = Writer::encode(s.field);
  j["plants"] = encode_struct(s.plants);
  j["camera"] = encode_struct(s.camera);
  j["survey"] = encode_struct(s.survey);
  j["detector"] = encode_struct(s.detector);
  j["filter"] = encode_struct(s.filter);
  j["merge_radius_m"] = s.merge_radius_m;
  j["routing"] = encode_struct(s.routing);
  j["boom"] = encode_struct(s.boom);
  j["robot"] = encode_struct(s.robot);
  j["verify"] = encode_struct(s.verify);
  j["network"] = encode_struct(s.network);
  j["offload"] = encode_struct(s.offload);
  j["edge_delay_s"] = s.edge_delay_s;
  j["abort_at_s"] = Writer::encode(s.abort_at_s);
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  Reader r(j, "scenario");
  int version = kSchemaVersion;
  r("schema_version", version);
  if (version != kSchemaVersion) {
    throw ValidationError("unsupported schema_version " + std::to_string(version));
  }
  r("seed", s.seed);
  r("origin", s.origin);
  r("field_vertices", s.field);
  r("merge_radius_m", s.merge_radius_m);
  r("edge_delay_s", s.edge_delay_s);
  r("abort_at_s", s.abort_at_s);
  auto section = [&](const char* key, auto& out) {
    r.mark(key);
    const auto it = j.find(key);
    if (it != j.end()) decode_struct(*it, out, std::string("scenario.") + key);
  };
  section("plants", s.plants);
  section("camera", s.camera);
  section("survey", s.survey);
  section("detector", s.detector);
  section("filter", s.filter);
  section("routing", s.routing);
  section("boom", s.boom);
  section("robot", s.robot);
  section("verify", s.verify);
  section("network", s.network);
  section("offload", s.offload);
  r.finish();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("scenario file '" + path + "' is not valid JSON: " + e.what());
  }
  Scenario s = scenario_from_json(j);
  s.validate();
  return s;
}

Scenario with_parameter(const Scenario& s, const std::string& path, const Json& value) {
  Json j = to_json(s);
  Json* node = &j;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw UnknownParameter("empty parameter path");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!node->is_object() || !node->contains(parts[i])) throw UnknownParameter("unknown parameter '" + path + "'");
    node = &(*node)[parts[i]];
  }
  if (node->is_object() || node->is_array() || parts.front() == "schema_version") {
    throw UnknownParameter("parameter '" + path + "' is not a scalar field");
  }
  if (!value.is_primitive()) throw ValidationError("sweep value for '" + path + "' must be a scalar");
  *node = value;
  Scenario out = scenario_from_json(j);
  out.validate();
  return out;
}

}  // namespace agrisim
