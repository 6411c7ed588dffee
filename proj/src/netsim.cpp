#include "agrisim/netsim.hpp"

#include <algorithm>
#include <cmath>

#include "agrisim/error.hpp"

namespace agrisim {

namespace {

// Backlog below this many bits counts as an empty queue.
constexpr double kEmptyQueueBits = 0.5;

long long bursts_in(const TrafficSource& s, double t0, double t1) {
  if (!(s.period_s > 0.0) || s.burst_bits <= 0.0) return 0;
  const double first = std::ceil((t0 - s.phase_s) / s.period_s - 1e-9);
  const double last = std::ceil((t1 - s.phase_s) / s.period_s - 1e-9) - 1.0;
  const double lo = std::max(first, 0.0);
  return last >= lo ? static_cast<long long>(last - lo) + 1 : 0;
}

}  // namespace

std::vector<LinkPreset> presets() {
  return {
      {"private-5g-sa", 700.0, 300.0, 10.0},
      {"public-4g", 90.0, 18.0, 25.0},
      {"public-5g-nsa", 240.0, 110.0, 20.0},
      {"future-5g-sa", 500.0, 500.0, 10.0},
  };
}

LinkPreset preset_by_name(const std::string& name) {
  for (auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw UnknownParameter("unknown network preset '" + name + "'");
}

const char* to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }

void TrafficSource::validate() const {
  if (!(rate_bps >= 0.0) || !(burst_bits >= 0.0) || !(period_s >= 0.0) || !(phase_s >= 0.0)) {
    throw ValidationError("traffic source '" + name + "' has a negative rate or period");
  }
  if (burst_bits > 0.0 && !(period_s > 0.0)) throw ValidationError("traffic source '" + name + "' bursts need a period");
}

LinkTrace simulate_link(const LinkPreset& preset, const std::vector<TrafficSource>& sources, double duration_s,
                        double tick_s, Direction direction) {
  if (!(duration_s > 0.0)) throw ValidationError("link simulation duration must be positive");
  if (!(tick_s > 0.0 && tick_s <= 0.1)) throw ValidationError("link tick must be in (0, 0.1] s");
  const double cap_mbps = direction == Direction::Up ? preset.uplink_mbps : preset.downlink_mbps;
  if (!(cap_mbps > 0.0) || !(preset.latency_ms > 0.0)) throw ValidationError("preset capacities and latency must be > 0");
  for (const auto& s : sources) s.validate();

  const double capacity = cap_mbps * 1e6;
  const auto n = static_cast<long long>(std::llround(duration_s / tick_s));
  LinkTrace trace;
  trace.preset = preset.name;
  trace.direction = direction;
  trace.tick_s = tick_s;
  trace.ticks.reserve(static_cast<std::size_t>(n));

  auto& sum = trace.summary;
  sum.capacity_bps = capacity;
  double backlog = 0.0;
  long long run_start = -1;
  double st = 0.0, sb = 0.0, stt = 0.0, stb = 0.0;
  for (long long k = 0; k < n; ++k) {
    const double t0 = static_cast<double>(k) * tick_s;
    const double t1 = static_cast<double>(k + 1) * tick_s;
    double offered = 0.0;
    for (const auto& s : sources) {
      if (s.direction != direction) continue;
      offered += s.rate_bps * tick_s + static_cast<double>(bursts_in(s, t0, t1)) * s.burst_bits;
    }
    const double served = std::min(offered + backlog, capacity * tick_s);
    backlog = std::max(0.0, offered + backlog - served);
    trace.ticks.push_back({t0, offered / tick_s, served / tick_s, backlog, backlog / capacity});

    sum.total_offered_bits += offered;
    sum.total_served_bits += served;
    sum.peak_backlog_bits = std::max(sum.peak_backlog_bits, backlog);
    sum.max_queue_delay_s = std::max(sum.max_queue_delay_s, backlog / capacity);
    st += t1;
    sb += backlog;
    stt += t1 * t1;
    stb += t1 * backlog;

    if (backlog > kEmptyQueueBits) {
      if (run_start < 0) run_start = k;
      if (!sum.saturated && static_cast<double>(k - run_start + 1) * tick_s >= 1.0 - 1e-9) {
        sum.saturated = true;
        sum.saturation_onset_s = static_cast<double>(run_start) * tick_s;
      }
    } else {
      run_start = -1;
    }
  }
  const double duration = static_cast<double>(n) * tick_s;
  sum.final_backlog_bits = backlog;
  sum.offered_mean_bps = sum.total_offered_bits / duration;
  sum.mean_utilization = sum.total_served_bits / (capacity * duration);
  const double nn = static_cast<double>(n);
  const double denom = nn * stt - st * st;
  sum.backlog_slope_bps = denom > 0.0 ? (nn * stb - st * sb) / denom : 0.0;
  return trace;
}

double offload_slack(double camera_lookahead_m, double speed_mps, double rtt_s, double inference_s, double lead_m) {
  if (!(speed_mps > 0.0)) throw ValidationError("robot speed must be positive");
  return (camera_lookahead_m - lead_m) / speed_mps - rtt_s - inference_s;
}

}  // namespace agrisim
