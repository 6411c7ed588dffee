#pragma once

#include <optional>
#include <string>
#include <vector>

namespace agrisim {

// Cellular link capacities. latency_ms is a round-trip figure.
struct LinkPreset {
  std::string name;
  double downlink_mbps = 0.0;
  double uplink_mbps = 0.0;
  double latency_ms = 0.0;

  double rtt_s() const { return latency_ms / 1000.0; }
  double one_way_s() const { return latency_ms / 2000.0; }
};

std::vector<LinkPreset> presets();
// Throws UnknownParameter for an unknown preset name.
LinkPreset preset_by_name(const std::string& name);

enum class Direction { Up, Down };
const char* to_string(Direction d);

struct TrafficSource {
  std::string name;
  Direction direction = Direction::Up;
  // Constant rate component.
  double rate_bps = 0.0;
  // Periodic bursts: burst_bits emitted instantaneously every period_s, first at phase_s.
  double burst_bits = 0.0;
  double period_s = 0.0;
  double phase_s = 0.0;

  static TrafficSource constant(std::string name, Direction dir, double rate_bps) {
    return {std::move(name), dir, rate_bps, 0.0, 0.0, 0.0};
  }
  static TrafficSource periodic(std::string name, Direction dir, double bits, double period_s, double phase_s = 0.0) {
    return {std::move(name), dir, 0.0, bits, period_s, phase_s};
  }
  double mean_rate_bps() const { return rate_bps + (period_s > 0.0 ? burst_bits / period_s : 0.0); }
  void validate() const;
};

struct LinkTick {
  double t_s = 0.0;
  double offered_bps = 0.0;
  double served_bps = 0.0;
  double backlog_bits = 0.0;
  double queue_delay_s = 0.0;
};

struct LinkSummary {
  double capacity_bps = 0.0;
  double offered_mean_bps = 0.0;
  double mean_utilization = 0.0;
  double peak_backlog_bits = 0.0;
  double final_backlog_bits = 0.0;
  double max_queue_delay_s = 0.0;
  // Least-squares slope of backlog over time.
  double backlog_slope_bps = 0.0;
  bool saturated = false;
  // Start of the first backlog run lasting at least one second.
  std::optional<double> saturation_onset_s;
  double total_offered_bits = 0.0;
  double total_served_bits = 0.0;
};

struct LinkTrace {
  std::string preset;
  Direction direction = Direction::Up;
  double tick_s = 0.0;
  std::vector<LinkTick> ticks;
  LinkSummary summary;
};

inline constexpr double kDefaultTickS = 0.01;

// Fluid queue: per tick, served = min(offered + backlog, capacity * tick).
LinkTrace simulate_link(const LinkPreset& preset, const std::vector<TrafficSource>& sources, double duration_s,
                        double tick_s = kDefaultTickS, Direction direction = Direction::Up);

// Time left after the round trip and inference before the nozzle must open.
double offload_slack(double camera_lookahead_m, double speed_mps, double rtt_s, double inference_s, double lead_m);

}  // namespace agrisim
