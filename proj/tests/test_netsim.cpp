#include <cmath>

#include "agrisim/error.hpp"
#include "agrisim/netsim.hpp"
#include "doctest.h"

using namespace agrisim;

namespace {

std::vector<TrafficSource> uav() {
  return {TrafficSource::constant("camera", Direction::Up, 192e6 / 0.82),
          TrafficSource::constant("fpv", Direction::Up, 6e6)};
}

std::vector<TrafficSource> uav_and_robot() {
  auto s = uav();
  for (int i = 0; i < 3; ++i) s.push_back(TrafficSource::constant("robot", Direction::Up, 25e6));
  return s;
}

}  // namespace

TEST_CASE("presets") {
  const auto p = presets();
  REQUIRE(p.size() == 4);
  const auto a = preset_by_name("private-5g-sa");
  CHECK(a.downlink_mbps == 700);
  CHECK(a.uplink_mbps == 300);
  CHECK(a.latency_ms == 10);
  CHECK(a.rtt_s() == doctest::Approx(0.010));
  CHECK(a.one_way_s() == doctest::Approx(0.005));
  const auto b = preset_by_name("public-4g");
  CHECK(b.downlink_mbps == 90);
  CHECK(b.uplink_mbps == 18);
  CHECK(b.latency_ms == 25);
  const auto c = preset_by_name("public-5g-nsa");
  CHECK(c.downlink_mbps == 240);
  CHECK(c.uplink_mbps == 110);
  CHECK(c.latency_ms == 20);
  CHECK(preset_by_name("future-5g-sa").uplink_mbps == 500);
  CHECK_THROWS_AS(preset_by_name("wifi"), UnknownParameter);
}

TEST_CASE("UAV traffic fits the private 5G uplink") {
  const auto tr = simulate_link(preset_by_name("private-5g-sa"), uav(), 10.0);
  CHECK(tr.summary.mean_utilization == doctest::Approx((192e6 / 0.82 + 6e6) / 300e6).epsilon(1e-9));
  CHECK(tr.summary.mean_utilization == doctest::Approx(0.80).epsilon(0.01));
  CHECK(tr.summary.peak_backlog_bits == 0.0);
  CHECK_FALSE(tr.summary.saturated);
  for (const auto& t : tr.ticks) CHECK(t.backlog_bits == 0.0);
}

TEST_CASE("robot streams saturate the private 5G uplink") {
  const auto tr = simulate_link(preset_by_name("private-5g-sa"), uav_and_robot(), 10.0);
  const double excess = 192e6 / 0.82 + 6e6 + 75e6 - 300e6;
  CHECK(tr.summary.saturated);
  CHECK(tr.summary.backlog_slope_bps == doctest::Approx(excess).epsilon(1e-6));
  CHECK(tr.summary.backlog_slope_bps / 1e6 == doctest::Approx(15.1).epsilon(0.01));
  CHECK(tr.summary.final_backlog_bits == doctest::Approx(excess * 10.0).epsilon(1e-6));

  const auto g4 = simulate_link(preset_by_name("public-4g"), uav_and_robot(), 10.0);
  CHECK(g4.summary.saturated);
  REQUIRE(g4.summary.saturation_onset_s.has_value());
  CHECK(*g4.summary.saturation_onset_s == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("trace invariants") {
  for (const auto* name : {"private-5g-sa", "public-4g", "public-5g-nsa"}) {
    const auto preset = preset_by_name(name);
    auto src = uav_and_robot();
    src.push_back(TrafficSource::periodic("burst", Direction::Up, 50e6, 0.7, 0.13));
    const auto tr = simulate_link(preset, src, 5.0, 0.01);
    const double cap = preset.uplink_mbps * 1e6;
    for (const auto& t : tr.ticks) {
      CHECK(t.served_bps <= cap * (1.0 + 1e-12));
      CHECK(t.backlog_bits >= 0.0);
      CHECK(t.queue_delay_s == doctest::Approx(t.backlog_bits / cap));
    }
    const double off = tr.summary.total_offered_bits;
    const double bal = tr.summary.total_served_bits + tr.summary.final_backlog_bits;
    CHECK(std::abs(off - bal) <= 1.0 + off * 1e-9);
  }
}

TEST_CASE("zero sources and downlink direction") {
  const auto tr = simulate_link(preset_by_name("public-4g"), {}, 2.0);
  for (const auto& t : tr.ticks) {
    CHECK(t.offered_bps == 0.0);
    CHECK(t.served_bps == 0.0);
    CHECK(t.backlog_bits == 0.0);
  }
  CHECK_FALSE(tr.summary.saturated);
  const auto down = simulate_link(preset_by_name("public-4g"), uav_and_robot(), 2.0, 0.01, Direction::Down);
  CHECK(down.summary.total_offered_bits == 0.0);
  CHECK_THROWS_AS(simulate_link(preset_by_name("public-4g"), {}, 2.0, 0.2), ValidationError);
  CHECK_THROWS_AS(simulate_link(preset_by_name("public-4g"), {}, 0.0), ValidationError);
}

TEST_CASE("halving the tick barely changes summaries") {
  const auto preset = preset_by_name("private-5g-sa");
  for (const auto& src : {uav(), uav_and_robot()}) {
    const auto a = simulate_link(preset, src, 10.0, 0.01).summary;
    const auto b = simulate_link(preset, src, 10.0, 0.005).summary;
    CHECK(b.mean_utilization == doctest::Approx(a.mean_utilization).epsilon(0.01));
    CHECK(b.peak_backlog_bits == doctest::Approx(a.peak_backlog_bits).epsilon(0.01));
    CHECK(b.backlog_slope_bps == doctest::Approx(a.backlog_slope_bps).epsilon(0.01));
    CHECK(b.saturated == a.saturated);
  }
}

TEST_CASE("offload slack") {
  CHECK(offload_slack(0.5, 0.5, 0.010, 0.050, 0.02) == doctest::Approx(0.90));
  const double avail = (0.5 - 0.02) / 0.5 - 0.010;
  CHECK(offload_slack(0.5, 0.5, 0.010, avail, 0.02) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(offload_slack(0.1, 2.0, 0.010, 0.050, 0.02) < 0.0);
  CHECK_THROWS_AS(offload_slack(0.5, 0.0, 0.01, 0.05, 0.02), ValidationError);
}
