#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agrisim/geo.hpp"
#include "agrisim/route.hpp"

namespace agrisim {

struct BoomConfig {
  int nozzle_count = 16;
  double working_width_m = 1.8;
  double nozzle_spray_width_m = 0.15;
  double nozzle_overlap_m = 0.01;
  double working_height_m = 0.25;
  double flow_ml_per_s = 15.0;
  double pressure_bar = 3.0;
  double lead_m = 0.02;
  double lag_m = 0.02;
  double valve_latency_s = 0.0;
  // Lateral position (right of the robot axis) the robot steers the target
  // under. Unset: centre of the nozzle nearest the axis.
  std::optional<double> aim_offset_m;

  double pitch_m() const { return working_width_m / nozzle_count; }
  double aim_offset() const;
  // Throws ValidationError; nozzle_count must be one of the boom variants 6, 11, 16.
  void validate() const;
};

struct NozzleInterval {
  int id = 0;
  double center_m = 0.0;
  double lo_m = 0.0;
  double hi_m = 0.0;
};

struct BoomLayout {
  std::vector<NozzleInterval> nozzles;
  double pitch_m = 0.0;
  // Set when the spray width leaves gaps between neighbouring nozzles.
  std::optional<std::string> inconsistent_geometry;
};

BoomLayout boom_layout(const BoomConfig& cfg);

// Nozzles whose coverage intersects [offset - d/2, offset + d/2]. An empty
// result means the plant is outside the boom.
std::vector<int> assign_nozzles(const BoomLayout& layout, double lateral_offset_m, double diameter_m);

// Plant in pass-local coordinates: along-track distance from the boom at pass
// start, across-track offset to the right of the robot axis.
struct PassPlant {
  int plant_id = 0;
  double along_m = 0.0;
  double across_m = 0.0;
  double diameter_m = 0.1;
};

struct ValveEvent {
  int nozzle_id = 0;
  double t_open_s = 0.0;
  double t_close_s = 0.0;
  std::vector<int> plant_ids;

  double duration_s() const { return t_close_s - t_open_s; }
};

struct ValveSchedule {
  std::vector<ValveEvent> events;
};

// Unions overlapping windows of the same nozzle. Output ordered by (t_open, nozzle).
ValveSchedule coalesce(ValveSchedule schedule);

ValveSchedule schedule_spray(const std::vector<PassPlant>& plants, double speed_mps, const BoomConfig& cfg,
                             double pass_start_s = 0.0);

double volume_used_L(const ValveSchedule& schedule, const BoomConfig& cfg);
std::vector<double> volume_by_nozzle_L(const ValveSchedule& schedule, const BoomConfig& cfg);

inline constexpr double kSprayPassSpeedMps = 0.5;
inline constexpr double kTransitSpeedMps = 2.0;

double max_speed_for_dose(double required_dose_ml, double plant_diameter_m, const BoomConfig& cfg,
                          double speed_cap_mps = kSprayPassSpeedMps);

enum class MotionMode { Transit, Approach, SprayPass };
const char* to_string(MotionMode m);

struct TimelineSegment {
  LocalPoint from;
  LocalPoint to;
  double speed_mps = 0.0;
  double t_start_s = 0.0;
  double t_end_s = 0.0;
  MotionMode mode = MotionMode::Transit;
  int target_id = -1;
};

struct RobotTimeline {
  std::vector<TimelineSegment> segments;
  double end_time_s() const { return segments.empty() ? 0.0 : segments.back().t_end_s; }
  double distance_m() const;
};

struct RobotConfig {
  double transit_speed_mps = kTransitSpeedMps;
  double approach_speed_mps = kSprayPassSpeedMps;
  double slow_zone_radius_m = 2.0;
  // Straight run before and after the plant on each spray pass.
  double pass_run_in_m = 0.25;
  double pass_run_out_m = 0.25;
  double tank_L = 24.0;
  // When set, the spray pass slows further so each plant receives this dose.
  std::optional<double> required_dose_ml;

  void validate() const;
};

// Close-range verification stand-in: Bernoulli hit/miss plus re-localisation noise.
struct VerifyModel {
  double p_confirm = 1.0;
  double p_false_spray = 0.0;
  double lateral_sigma_m = 0.02;

  void validate() const;
};

struct SprayTarget {
  int id = 0;
  LocalPoint position;
  double diameter_m = 0.1;
  // Ground truth behind the target; false positives have real == false.
  bool real = true;
  int plant_id = -1;
  LocalPoint true_position;
  double true_diameter_m = 0.1;

  static SprayTarget assumed_real(int id, LocalPoint position, double diameter_m) {
    return {id, position, diameter_m, true, id, position, diameter_m};
  }
};

enum class TargetOutcome { Sprayed, VerificationMiss, FalseSpray, Rejected, TankEmpty, OutsideBoom, Aborted };
const char* to_string(TargetOutcome o);

struct TargetResult {
  int target_id = 0;
  int plant_id = -1;
  TargetOutcome outcome = TargetOutcome::Sprayed;
  double volume_L = 0.0;
  int nozzles = 0;
  double t_pass_start_s = 0.0;
};

struct SprayReport {
  double tank_initial_L = 0.0;
  double volume_used_L = 0.0;
  double tank_remaining_L = 0.0;
  int plants_sprayed = 0;
  int plants_missed = 0;
  int missed_for_tank = 0;
  int false_sprays = 0;
  int rejected_false_targets = 0;
  int outside_boom = 0;
  int aborted = 0;
  std::vector<double> volume_by_nozzle_L;
  double mission_start_s = 0.0;
  double mission_end_s = 0.0;
  double drive_distance_m = 0.0;
};

struct RobotMission {
  RobotTimeline timeline;
  ValveSchedule schedule;
  SprayReport report;
  std::vector<TargetResult> results;
};

RobotMission plan_robot_mission(const Tour& tour, const std::vector<SprayTarget>& targets, const VerifyModel& verify,
                                const BoomConfig& boom, const RobotConfig& robot, std::uint64_t seed,
                                double start_time_s = 0.0, std::optional<double> abort_at_s = std::nullopt);

}  // namespace agrisim
