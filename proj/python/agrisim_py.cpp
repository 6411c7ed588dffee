#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agrisim/engine.hpp"
#include "agrisim/error.hpp"
#include "agrisim/geo.hpp"
#include "agrisim/route.hpp"
#include "agrisim/serialize.hpp"
#include "agrisim/sprayer.hpp"

namespace py = pybind11;
using namespace agrisim;

namespace {

using Point = std::pair<double, double>;

std::vector<LocalPoint> to_points(const std::vector<Point>& pts) {
  std::vector<LocalPoint> out;
  out.reserve(pts.size());
  for (const auto& [e, n] : pts) out.push_back({e, n});
  return out;
}

py::dict tour_dict(const Tour& t) {
  py::dict d;
  d["order"] = t.order;
  d["length_m"] = t.length_m;
  d["closed"] = t.closed;
  return d;
}

Scenario scenario_of(const std::string& text) { return scenario_from_json(text.empty() ? Json::object() : Json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_agrisim, m) {
  m.doc() = "agrisim core bindings; JSON documents cross the boundary as strings";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  m.attr("schema_version") = kSchemaVersion;

  m.def("default_scenario", [] { return to_json(Scenario{}).dump(); });
  m.def(
      "validate_scenario",
      [](const std::string& text) {
        const Scenario s = scenario_of(text);
        s.validate();
        return to_json(s).dump();
      },
        py::arg("scenario_json"));
  m.def(
      "run_scenario",
      [](const std::string& text) {
        const Scenario s = scenario_of(text);
        ScenarioReport r;
        {
          py::gil_scoped_release release;
          r = run_scenario(s);
        }
        return py::make_tuple(r.to_json().dump(), r.events_jsonl());
      },
      py::arg("scenario_json"));
  m.def(
      "sweep",
      [](const std::string& text, const std::string& path, const std::string& values_json, int jobs) {
        const Scenario s = scenario_of(text);
        const Json values = Json::parse(values_json);
        std::vector<Json> vals(values.begin(), values.end());
        std::vector<ScenarioReport> reports;
        {
          py::gil_scoped_release release;
          reports = sweep(s, path, vals, jobs);
        }
        std::vector<std::string> out;
        for (const auto& r : reports) out.push_back(r.to_json().dump());
        return out;
      },
      py::arg("scenario_json"), py::arg("path"), py::arg("values_json"), py::arg("jobs") = 1);

  m.def(
      "wgs84_to_enu",
      [](Point origin, Point p) {
        const LocalPoint l = wgs84_to_enu({origin.first, origin.second}, {p.first, p.second});
        return Point{l.east_m, l.north_m};
      },
      py::arg("origin"), py::arg("point"));
  m.def(
      "enu_to_wgs84",
      [](Point origin, Point l) {
        const GeoPoint g = enu_to_wgs84({origin.first, origin.second}, {l.first, l.second});
        return Point{g.lat_deg, g.lon_deg};
      },
      py::arg("origin"), py::arg("local"));

  m.def(
      "nearest_neighbor",
      [](Point start, const std::vector<Point>& targets, bool closed) {
        return tour_dict(nearest_neighbor({start.first, start.second}, to_points(targets), closed));
      },
      py::arg("start"), py::arg("targets"), py::arg("closed") = false);
  m.def(
      "improve",
      [](Point start, const std::vector<Point>& targets, const std::vector<int>& order, bool closed) {
        const auto pts = to_points(targets);
        Tour t{{start.first, start.second}, order, 0.0, closed};
        t.length_m = tour_length(t, pts);
        return tour_dict(improve(t, pts, {}));
      },
      py::arg("start"), py::arg("targets"), py::arg("order"), py::arg("closed") = false);
  m.def(
      "brute_force_optimal",
      [](Point start, const std::vector<Point>& targets, bool closed) {
        return tour_dict(brute_force_optimal({start.first, start.second}, to_points(targets), closed));
      },
      py::arg("start"), py::arg("targets"), py::arg("closed") = false);

  m.def(
      "spray_window",
      [](double diameter_m, double speed_mps) {
        BoomConfig b;
        b.nozzle_spray_width_m = b.pitch_m();
        const double c = boom_layout(b).nozzles[0].center_m;
        const auto s = schedule_spray({{0, 0.5 * diameter_m + b.lead_m + 0.01, c, diameter_m}}, speed_mps, b);
        return py::make_tuple(s.events.at(0).duration_s(), volume_used_L(s, b) * 1000.0);
      },
      py::arg("diameter_m"), py::arg("speed_mps"),
      "Single-nozzle valve window (s) and dose (ml) with the default boom.");
  m.def(
      "max_speed_for_dose",
      [](double dose_ml, double diameter_m) { return max_speed_for_dose(dose_ml, diameter_m, BoomConfig{}); },
      py::arg("dose_ml"), py::arg("diameter_m"));

  m.def("presets", [] {
    std::vector<std::string> out;
    for (const auto& p : presets()) out.push_back(to_json(p).dump());
    return out;
  });
  m.def(
      "simulate_link",
      [](const std::string& preset, const std::vector<double>& uplink_rates_bps, double duration_s, double tick_s) {
        std::vector<TrafficSource> src;
        for (std::size_t i = 0; i < uplink_rates_bps.size(); ++i) {
          src.push_back(TrafficSource::constant("source-" + std::to_string(i), Direction::Up, uplink_rates_bps[i]));
        }
        return to_json(simulate_link(preset_by_name(preset), src, duration_s, tick_s).summary).dump();
      },
      py::arg("preset"), py::arg("uplink_rates_bps"), py::arg("duration_s") = 10.0, py::arg("tick_s") = kDefaultTickS);
  m.def("offload_slack", &offload_slack, py::arg("camera_lookahead_m"), py::arg("speed_mps"), py::arg("rtt_s"),
        py::arg("inference_s"), py::arg("lead_m"));
}
