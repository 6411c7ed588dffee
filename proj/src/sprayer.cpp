#include "agrisim/sprayer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "agrisim/error.hpp"
#include "agrisim/rng.hpp"

namespace agrisim {

namespace {

constexpr std::uint64_t kVerifyStream = 0x766572696679ULL;
// Extra straight run kept beyond the lead/lag zone on every pass.
constexpr double kPassMarginM = 0.05;
constexpr double kTankEps = 1e-12;

}  // namespace

double BoomConfig::aim_offset() const {
  if (aim_offset_m) return *aim_offset_m;
  return nozzle_count % 2 == 0 ? 0.5 * pitch_m() : 0.0;
}

void BoomConfig::validate() const {
  if (nozzle_count != 6 && nozzle_count != 11 && nozzle_count != 16) {
    throw ValidationError("nozzle_count must be 6, 11 or 16 (boom variants), got " + std::to_string(nozzle_count));
  }
  if (!(working_width_m > 0.0) || !(nozzle_spray_width_m > 0.0) || !(working_height_m > 0.0) ||
      !(flow_ml_per_s > 0.0) || !(pressure_bar > 0.0) || !(nozzle_overlap_m >= 0.0)) {
    throw ValidationError("boom dimensions, flow and pressure must be positive");
  }
  if (!(lead_m >= 0.0) || !(lag_m >= 0.0) || !(valve_latency_s >= 0.0)) {
    throw ValidationError("lead, lag and valve latency must be >= 0");
  }
  if (aim_offset_m && !(std::abs(*aim_offset_m) <= 0.5 * working_width_m)) {
    throw ValidationError("aim offset must lie on the boom");
  }
}

void RobotConfig::validate() const {
  if (!(transit_speed_mps > 0.0) || !(approach_speed_mps > 0.0)) throw ValidationError("robot speeds must be positive");
  if (!(slow_zone_radius_m >= 0.0) || !(pass_run_in_m >= 0.0) || !(pass_run_out_m >= 0.0)) {
    throw ValidationError("slow zone and pass run lengths must be >= 0");
  }
  if (!(tank_L >= 0.0)) throw ValidationError("tank volume must be >= 0");
  if (required_dose_ml && !(*required_dose_ml > 0.0)) throw ValidationError("required dose must be positive");
}

void VerifyModel::validate() const {
  if (!(p_confirm >= 0.0 && p_confirm <= 1.0) || !(p_false_spray >= 0.0 && p_false_spray <= 1.0)) {
    throw ValidationError("verification probabilities must be in [0, 1]");
  }
  if (!(lateral_sigma_m >= 0.0)) throw ValidationError("lateral_sigma_m must be >= 0");
}

const char* to_string(MotionMode m) {
  switch (m) {
    case MotionMode::Transit: return "TRANSIT";
    case MotionMode::Approach: return "APPROACH";
    case MotionMode::SprayPass: return "SPRAY_PASS";
  }
  return "?";
}

const char* to_string(TargetOutcome o) {
  switch (o) {
    case TargetOutcome::Sprayed: return "sprayed";
    case TargetOutcome::VerificationMiss: return "verification_miss";
    case TargetOutcome::FalseSpray: return "false_spray";
    case TargetOutcome::Rejected: return "rejected";
    case TargetOutcome::TankEmpty: return "tank_empty";
    case TargetOutcome::OutsideBoom: return "outside_boom";
    case TargetOutcome::Aborted: return "aborted";
  }
  return "?";
}

double RobotTimeline::distance_m() const {
  double d = 0.0;
  for (const auto& s : segments) d += distance(s.from, s.to);
  return d;
}

BoomLayout boom_layout(const BoomConfig& cfg) {
  if (cfg.nozzle_count < 1 || !(cfg.working_width_m > 0.0) || !(cfg.nozzle_spray_width_m > 0.0)) {
    throw ValidationError("boom needs at least one nozzle and positive widths");
  }
  BoomLayout layout;
  layout.pitch_m = cfg.pitch_m();
  for (int k = 0; k < cfg.nozzle_count; ++k) {
    const double c = -0.5 * cfg.working_width_m + (k + 0.5) * layout.pitch_m;
    layout.nozzles.push_back({k, c, c - 0.5 * cfg.nozzle_spray_width_m, c + 0.5 * cfg.nozzle_spray_width_m});
  }
  if (cfg.nozzle_count > 1 && cfg.nozzle_spray_width_m < layout.pitch_m) {
    layout.inconsistent_geometry = "spray width " + std::to_string(cfg.nozzle_spray_width_m) +
                                   " m is below the nozzle pitch " + std::to_string(layout.pitch_m) +
                                   " m; coverage gaps between nozzles";
  }
  return layout;
}

std::vector<int> assign_nozzles(const BoomLayout& layout, double lateral_offset_m, double diameter_m) {
  const double lo = lateral_offset_m - 0.5 * diameter_m;
  const double hi = lateral_offset_m + 0.5 * diameter_m;
  std::vector<int> ids;
  for (const auto& n : layout.nozzles) {
    if (n.lo_m <= hi && lo <= n.hi_m) ids.push_back(n.id);
  }
  return ids;
}

ValveSchedule coalesce(ValveSchedule schedule) {
  auto& ev = schedule.events;
  std::sort(ev.begin(), ev.end(), [](const ValveEvent& a, const ValveEvent& b) {
    return a.nozzle_id != b.nozzle_id ? a.nozzle_id < b.nozzle_id : a.t_open_s < b.t_open_s;
  });
  std::vector<ValveEvent> merged;
  for (auto& e : ev) {
    if (!merged.empty() && merged.back().nozzle_id == e.nozzle_id && e.t_open_s <= merged.back().t_close_s) {
      auto& m = merged.back();
      m.t_close_s = std::max(m.t_close_s, e.t_close_s);
      m.plant_ids.insert(m.plant_ids.end(), e.plant_ids.begin(), e.plant_ids.end());
      std::sort(m.plant_ids.begin(), m.plant_ids.end());
      m.plant_ids.erase(std::unique(m.plant_ids.begin(), m.plant_ids.end()), m.plant_ids.end());
    } else {
      merged.push_back(std::move(e));
    }
  }
  std::stable_sort(merged.begin(), merged.end(), [](const ValveEvent& a, const ValveEvent& b) {
    return a.t_open_s != b.t_open_s ? a.t_open_s < b.t_open_s : a.nozzle_id < b.nozzle_id;
  });
  schedule.events = std::move(merged);
  return schedule;
}

ValveSchedule schedule_spray(const std::vector<PassPlant>& plants, double speed_mps, const BoomConfig& cfg,
                             double pass_start_s) {
  if (!(speed_mps > 0.0)) throw ValidationError("spray pass speed must be positive");
  const BoomLayout layout = boom_layout(cfg);
  ValveSchedule raw;
  for (const auto& p : plants) {
    const double leading = p.along_m - 0.5 * p.diameter_m;
    const double trailing = p.along_m + 0.5 * p.diameter_m;
    const double t_open = (leading - cfg.lead_m) / speed_mps - cfg.valve_latency_s;
    const double t_close = (trailing + cfg.lag_m) / speed_mps - cfg.valve_latency_s;
    if (t_open < 0.0) {
      throw NegativeTime("plant " + std::to_string(p.plant_id) + " needs its valve opened " +
                         std::to_string(-t_open) + " s before the pass starts");
    }
    for (int id : assign_nozzles(layout, p.across_m, p.diameter_m)) {
      raw.events.push_back({id, pass_start_s + t_open, pass_start_s + t_close, {p.plant_id}});
    }
  }
  return coalesce(std::move(raw));
}

double volume_used_L(const ValveSchedule& schedule, const BoomConfig& cfg) {
  double ml = 0.0;
  for (const auto& e : schedule.events) ml += cfg.flow_ml_per_s * e.duration_s();
  return ml / 1000.0;
}

std::vector<double> volume_by_nozzle_L(const ValveSchedule& schedule, const BoomConfig& cfg) {
  std::vector<double> out(static_cast<std::size_t>(std::max(cfg.nozzle_count, 0)), 0.0);
  for (const auto& e : schedule.events) {
    if (e.nozzle_id >= 0 && e.nozzle_id < cfg.nozzle_count) {
      out[static_cast<std::size_t>(e.nozzle_id)] += cfg.flow_ml_per_s * e.duration_s() / 1000.0;
    }
  }
  return out;
}

double max_speed_for_dose(double required_dose_ml, double plant_diameter_m, const BoomConfig& cfg,
                          double speed_cap_mps) {
  if (!(required_dose_ml > 0.0)) throw ValidationError("required dose must be positive");
  return std::min(speed_cap_mps, cfg.flow_ml_per_s * (plant_diameter_m + cfg.lead_m + cfg.lag_m) / required_dose_ml);
}

RobotMission plan_robot_mission(const Tour& tour, const std::vector<SprayTarget>& targets, const VerifyModel& verify,
                                const BoomConfig& boom, const RobotConfig& robot, std::uint64_t seed,
                                double start_time_s, std::optional<double> abort_at_s) {
  boom.validate();
  robot.validate();
  verify.validate();
  if (!(robot.tank_L > 0.0)) throw EmptyTankAtStart("robot tank is empty at mission start");
  if (!is_permutation_of_targets(tour, targets.size())) throw ValidationError("tour does not match the target list");

  const BoomLayout layout = boom_layout(boom);
  const double aim = boom.aim_offset();

  RobotMission out;
  auto& segs = out.timeline.segments;
  double t = start_time_s;
  LocalPoint cur = tour.start;
  LocalPoint prev_dir{0.0, 1.0};
  double remaining = robot.tank_L;
  double used = 0.0;
  bool tank_out = false;

  auto drive = [&](LocalPoint to, double speed, MotionMode mode, int target_id) {
    const double len = distance(cur, to);
    if (len <= 0.0) return;
    const double dt = len / speed;
    segs.push_back({cur, to, speed, t, t + dt, mode, target_id});
    t += dt;
    cur = to;
  };

  ValveSchedule raw;
  for (int idx : tour.order) {
    const SprayTarget& tgt = targets[static_cast<std::size_t>(idx)];
    double pass_speed = robot.approach_speed_mps;
    if (robot.required_dose_ml) {
      pass_speed = max_speed_for_dose(*robot.required_dose_ml, tgt.diameter_m, boom, robot.approach_speed_mps);
    }
    const double run_in = std::max(robot.pass_run_in_m, 0.5 * tgt.diameter_m + boom.lead_m +
                                                            boom.valve_latency_s * pass_speed + kPassMarginM);
    const double run_out = std::max(robot.pass_run_out_m, 0.5 * tgt.diameter_m + boom.lag_m + kPassMarginM);

    const LocalPoint to_target = tgt.position - cur;
    const double d_target = norm(to_target);
    const LocalPoint u = d_target > run_in ? (1.0 / d_target) * to_target : prev_dir;
    const LocalPoint r{u.north_m, -u.east_m};
    const LocalPoint axis_target = tgt.position - aim * r;
    const LocalPoint p_in = axis_target - run_in * u;
    const LocalPoint p_out = axis_target + run_out * u;

    const double leg = distance(cur, p_in);
    const double slow = std::min(leg, std::max(0.0, robot.slow_zone_radius_m - run_in));
    if (leg > slow) drive(cur + ((leg - slow) / leg) * (p_in - cur), robot.transit_speed_mps, MotionMode::Transit, tgt.id);
    drive(p_in, robot.approach_speed_mps, MotionMode::Approach, tgt.id);
    const double t_pass = t;
    drive(p_out, pass_speed, MotionMode::SprayPass, tgt.id);
    prev_dir = u;

    Rng rng(derive_seed(seed, kVerifyStream, static_cast<std::uint64_t>(tgt.id)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double draw = unit(rng);
    const double n_along = gauss(rng);
    const double n_across = gauss(rng);

    TargetResult res;
    res.target_id = tgt.id;
    res.plant_id = tgt.real ? tgt.plant_id : -1;
    res.t_pass_start_s = t_pass;

    bool spray = false;
    if (abort_at_s && t > *abort_at_s) {
      res.outcome = TargetOutcome::Aborted;
    } else if (tgt.real) {
      spray = draw < verify.p_confirm;
      res.outcome = spray ? TargetOutcome::Sprayed : TargetOutcome::VerificationMiss;
    } else {
      spray = draw < verify.p_false_spray;
      res.outcome = spray ? TargetOutcome::FalseSpray : TargetOutcome::Rejected;
    }

    if (spray) {
      PassPlant pp{tgt.id, run_in, aim, tgt.diameter_m};
      if (tgt.real) {
        const LocalPoint rel = tgt.true_position - p_in;
        pp.along_m = dot(rel, u) + verify.lateral_sigma_m * n_along;
        pp.across_m = dot(rel, r) + verify.lateral_sigma_m * n_across;
        pp.diameter_m = tgt.true_diameter_m;
      }
      const auto nozzles = assign_nozzles(layout, pp.across_m, pp.diameter_m);
      if (nozzles.empty()) {
        res.outcome = TargetOutcome::OutsideBoom;
      } else {
        const ValveSchedule s = schedule_spray({pp}, pass_speed, boom, t_pass);
        const double vol = volume_used_L(s, boom);
        if (tank_out || vol > remaining + kTankEps) {
          tank_out = true;
          res.outcome = TargetOutcome::TankEmpty;
        } else {
          remaining = std::max(0.0, remaining - vol);
          used += vol;
          res.volume_L = vol;
          res.nozzles = static_cast<int>(nozzles.size());
          raw.events.insert(raw.events.end(), s.events.begin(), s.events.end());
        }
      }
    }
    out.results.push_back(res);
  }
  if (tour.closed) drive(tour.start, robot.transit_speed_mps, MotionMode::Transit, -1);

  if (abort_at_s) {
    const double stop = std::max(*abort_at_s, start_time_s);
    std::vector<TimelineSegment> kept;
    for (auto s : segs) {
      if (s.t_start_s >= stop) break;
      if (s.t_end_s > stop) {
        const double f = (stop - s.t_start_s) / (s.t_end_s - s.t_start_s);
        s.to = s.from + f * (s.to - s.from);
        s.t_end_s = stop;
      }
      kept.push_back(s);
    }
    segs = std::move(kept);
  }

  out.schedule = coalesce(std::move(raw));
  auto& rep = out.report;
  rep.tank_initial_L = robot.tank_L;
  rep.volume_used_L = used;
  rep.tank_remaining_L = robot.tank_L - used;
  rep.volume_by_nozzle_L = volume_by_nozzle_L(out.schedule, boom);
  for (const auto& r : out.results) {
    switch (r.outcome) {
      case TargetOutcome::Sprayed: ++rep.plants_sprayed; break;
      case TargetOutcome::VerificationMiss: ++rep.plants_missed; break;
      case TargetOutcome::FalseSpray: ++rep.false_sprays; break;
      case TargetOutcome::Rejected: ++rep.rejected_false_targets; break;
      case TargetOutcome::TankEmpty: ++rep.missed_for_tank; break;
      case TargetOutcome::OutsideBoom: ++rep.outside_boom; break;
      case TargetOutcome::Aborted: ++rep.aborted; break;
    }
  }
  rep.mission_start_s = start_time_s;
  rep.mission_end_s = segs.empty() ? start_time_s : out.timeline.end_time_s();
  rep.drive_distance_m = out.timeline.distance_m();
  return out;
}

}  // namespace agrisim
