#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agrisim/field.hpp"
#include "agrisim/geo.hpp"
#include "agrisim/json_types.hpp"
#include "agrisim/netsim.hpp"
#include "agrisim/sprayer.hpp"

namespace agrisim {

inline constexpr int kSchemaVersion = 1;

struct PlantModel {
  double density_per_ha = 50.0;
  // Exact plant count; overrides the Poisson density draw when set.
  std::optional<int> count;
  double diameter_mean_m = 0.1;
  double diameter_sigma_m = 0.02;
};

struct SurveyParams {
  double altitude_m = 10.0;
  double speed_mps = 3.0;
  double track_spacing_m = 3.93;
  double overlap = 0.1;
  double sweep_heading_deg = 0.0;
  double turn_time_s = 3.0;
  double image_size_bits = 192e6;
  double fpv_rate_bps = 6e6;
};

struct FilterParams {
  double min_area_m2 = 0.005;
  double min_area_to_length_m = 0.04;
};

struct RoutingConfig {
  // "nn" or "lk".
  std::string heuristic = "lk";
  int max_depth = 3;
  double time_budget_ms = 0.0;
  int candidates = 8;
  bool return_to_start = false;
  LocalPoint robot_start;
  bool oracle = true;
};

struct NetworkConfig {
  std::string preset = "private-5g-sa";
  double tick_s = kDefaultTickS;
  double duration_s = 10.0;
  // "constant" (mean rate) or "burst" (one image per capture interval).
  std::string camera_traffic = "constant";
  int robot_camera_streams = 3;
  double robot_camera_rate_bps = 25e6;
  double downlink_control_bps = 0.0;
};

struct OffloadConfig {
  double camera_lookahead_m = 0.5;
  double inference_s = 0.05;
};

struct Scenario {
  std::uint64_t seed = 1;
  GeoPoint origin{49.4240, 7.7530};
  std::vector<LocalPoint> field{{0.0, 0.0}, {100.0, 0.0}, {100.0, 100.0}, {0.0, 100.0}};
  PlantModel plants;
  CameraModel camera;
  SurveyParams survey;
  DetectorModel detector;
  FilterParams filter;
  double merge_radius_m = 0.3;
  RoutingConfig routing;
  BoomConfig boom;
  RobotConfig robot;
  VerifyModel verify;
  NetworkConfig network;
  OffloadConfig offload;
  double edge_delay_s = 0.0;
  std::optional<double> abort_at_s;

  // Checks every sub-config against its module invariants; throws ValidationError.
  void validate() const;
};

Json to_json(const Scenario& s);
// Rejects unknown keys; absent keys keep their defaults.
Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::string& path);

// Sets a scalar field addressed by a dotted path ("plants.density_per_ha").
// Throws UnknownParameter if the path does not name a scalar field.
Scenario with_parameter(const Scenario& s, const std::string& path, const Json& value);

}  // namespace agrisim
