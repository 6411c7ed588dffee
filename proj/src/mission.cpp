#include "agrisim/mission.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "agrisim/error.hpp"

namespace agrisim {

namespace {

double cross(LocalPoint o, LocalPoint a, LocalPoint b) {
  return (a.east_m - o.east_m) * (b.north_m - o.north_m) - (a.north_m - o.north_m) * (b.east_m - o.east_m);
}

bool on_segment(LocalPoint p, LocalPoint q, LocalPoint r) {
  return std::min(p.east_m, r.east_m) <= q.east_m && q.east_m <= std::max(p.east_m, r.east_m) &&
         std::min(p.north_m, r.north_m) <= q.north_m && q.north_m <= std::max(p.north_m, r.north_m);
}

int orientation(LocalPoint a, LocalPoint b, LocalPoint c) {
  const double v = cross(a, b, c);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool segments_intersect(LocalPoint p1, LocalPoint p2, LocalPoint q1, LocalPoint q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, q1, p2)) return true;
  if (o2 == 0 && on_segment(p1, q2, p2)) return true;
  if (o3 == 0 && on_segment(q1, p1, q2)) return true;
  if (o4 == 0 && on_segment(q1, p2, q2)) return true;
  return false;
}

}  // namespace

double signed_area(const std::vector<LocalPoint>& ring) {
  double a = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const LocalPoint& p = ring[i];
    const LocalPoint& q = ring[(i + 1) % ring.size()];
    a += p.east_m * q.north_m - q.east_m * p.north_m;
  }
  return 0.5 * a;
}

bool is_simple(const std::vector<LocalPoint>& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent edges share a vertex by construction.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n])) return false;
    }
  }
  return true;
}

FieldPolygon::FieldPolygon(std::vector<LocalPoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) throw DegeneratePolygon("field polygon needs at least 3 vertices");
  for (const auto& v : vertices_) {
    if (!std::isfinite(v.east_m) || !std::isfinite(v.north_m)) throw ValidationError("non-finite polygon vertex");
    if (std::abs(v.east_m) >= kMaxLocalRangeM || std::abs(v.north_m) >= kMaxLocalRangeM) {
      throw OutOfValidityRange("polygon vertex beyond the 10 km local-frame bound");
    }
  }
  if (!is_simple(vertices_)) throw ValidationError("field polygon is self-intersecting");
  const double a = signed_area(vertices_);
  if (a == 0.0) throw DegeneratePolygon("field polygon has zero area");
  if (a < 0.0) std::reverse(vertices_.begin(), vertices_.end());
}

FieldPolygon FieldPolygon::rectangle(double width_m, double height_m, LocalPoint c) {
  return FieldPolygon({c, c + LocalPoint{width_m, 0.0}, c + LocalPoint{width_m, height_m}, c + LocalPoint{0.0, height_m}});
}

double FieldPolygon::area_m2() const { return std::abs(signed_area(vertices_)); }

bool FieldPolygon::contains(LocalPoint p) const {
  bool inside = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const LocalPoint& a = vertices_[i];
    const LocalPoint& b = vertices_[j];
    if ((a.north_m > p.north_m) != (b.north_m > p.north_m)) {
      const double x = a.east_m + (p.north_m - a.north_m) / (b.north_m - a.north_m) * (b.east_m - a.east_m);
      if (p.east_m < x) inside = !inside;
    }
  }
  return inside;
}

std::pair<LocalPoint, LocalPoint> FieldPolygon::bounds() const {
  LocalPoint lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  LocalPoint hi{-lo.east_m, -lo.north_m};
  for (const auto& v : vertices_) {
    lo = {std::min(lo.east_m, v.east_m), std::min(lo.north_m, v.north_m)};
    hi = {std::max(hi.east_m, v.east_m), std::max(hi.north_m, v.north_m)};
  }
  return {lo, hi};
}

double SurveyPlan::track_length_m() const {
  double total = 0.0;
  for (const auto& t : tracks) total += t.length_m();
  return total;
}

double SurveyPlan::path_length_m() const {
  double total = track_length_m();
  for (std::size_t i = 1; i < tracks.size(); ++i) total += distance(tracks[i - 1].end, tracks[i].start);
  return total;
}

SurveyPlan plan_coverage(const FieldPolygon& field, double spacing_m, double altitude_m, double speed_mps,
                         double sweep_heading_deg, double turn_time_s) {
  if (!(spacing_m > 0.0)) throw ValidationError("track spacing must be positive");
  if (!(altitude_m > 0.0)) throw ValidationError("survey altitude must be positive");
  if (!(speed_mps > 0.0)) throw ValidationError("survey speed must be positive");
  if (!(turn_time_s >= 0.0)) throw ValidationError("turn time must be non-negative");
  const auto& ring = field.vertices();
  if (ring.size() < 3 || field.area_m2() < spacing_m * spacing_m) {
    throw DegeneratePolygon("field area " + std::to_string(field.area_m2()) + " m^2 is below spacing^2");
  }

  const LocalPoint along = heading_vector(sweep_heading_deg);
  const LocalPoint across = right_vector(sweep_heading_deg);

  std::vector<double> u(ring.size()), w(ring.size());
  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -u_min;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    u[i] = dot(ring[i], across);
    w[i] = dot(ring[i], along);
    u_min = std::min(u_min, u[i]);
    u_max = std::max(u_max, u[i]);
  }

  const double extent = u_max - u_min;
  const int line_count = std::max(1, static_cast<int>(std::ceil(extent / spacing_m - 1e-9)));
  const double first = u_min + 0.5 * (extent - (line_count - 1) * spacing_m);

  SurveyPlan plan;
  plan.altitude_agl_m = altitude_m;
  plan.speed_mps = speed_mps;
  plan.track_spacing_m = spacing_m;
  plan.sweep_heading_deg = sweep_heading_deg;
  plan.turn_time_s = turn_time_s;

  for (int k = 0; k < line_count; ++k) {
    const double c = first + k * spacing_m;
    std::vector<double> hits;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const std::size_t j = (i + 1) % ring.size();
      // Half-open rule so a vertex on the line is counted once.
      if ((u[i] <= c && c < u[j]) || (u[j] <= c && c < u[i])) {
        hits.push_back(w[i] + (c - u[i]) / (u[j] - u[i]) * (w[j] - w[i]));
      }
    }
    std::sort(hits.begin(), hits.end());
    std::vector<std::pair<double, double>> spans;
    for (std::size_t i = 0; i + 1 < hits.size(); i += 2) {
      if (hits[i + 1] - hits[i] > 1e-9) spans.emplace_back(hits[i], hits[i + 1]);
    }
    const bool forward = (k % 2) == 0;
    if (!forward) std::reverse(spans.begin(), spans.end());
    for (const auto& [lo, hi] : spans) {
      Track t;
      const double from = forward ? lo : hi;
      const double to = forward ? hi : lo;
      t.start = c * across + from * along;
      t.end = c * across + to * along;
      t.heading_deg = std::fmod(sweep_heading_deg + (forward ? 0.0 : 180.0), 360.0);
      if (t.heading_deg < 0.0) t.heading_deg += 360.0;
      t.line_index = k;
      plan.tracks.push_back(t);
    }
  }
  return plan;
}

CaptureSchedule capture_schedule(const SurveyPlan& plan, const CameraModel& cam, double overlap,
                                 const GeoPoint& origin) {
  if (!(overlap >= 0.0 && overlap < 1.0)) throw ValidationError("image overlap must be in [0, 1)");
  cam.validate();
  CaptureSchedule sched;
  sched.stride_m = cam.along_track_m(plan.altitude_agl_m) * (1.0 - overlap);
  sched.interval_s = sched.stride_m / plan.speed_mps;

  double t = 0.0;
  int image_id = 0;
  for (std::size_t i = 0; i < plan.tracks.size(); ++i) {
    const Track& tr = plan.tracks[i];
    if (i > 0) t += distance(plan.tracks[i - 1].end, tr.start) / plan.speed_mps + plan.turn_time_s;
    const double len = tr.length_m();
    const LocalPoint dir = (1.0 / len) * (tr.end - tr.start);
    std::vector<double> stations;
    const auto count = static_cast<int>(std::floor(len / sched.stride_m + 1e-9)) + 1;
    for (int k = 0; k < count; ++k) stations.push_back(k * sched.stride_m);
    // Closing frame when the last regular footprint stops short of the track end.
    if (stations.back() + 0.5 * cam.along_track_m(plan.altitude_agl_m) < len - 1e-9) stations.push_back(len);
    for (double s : stations) {
      CaptureEvent ev;
      ev.time_s = t + s / plan.speed_mps;
      ev.pose.position = enu_to_wgs84(origin, tr.start + s * dir);
      ev.pose.altitude_agl_m = plan.altitude_agl_m;
      ev.pose.heading_deg = tr.heading_deg;
      ev.image_id = image_id++;
      ev.track_index = static_cast<int>(i);
      sched.events.push_back(ev);
    }
    t += len / plan.speed_mps;
  }
  return sched;
}

SurveyEstimate survey_estimate(const SurveyPlan& plan, const CaptureSchedule& schedule, double image_size_bits,
                               double fpv_rate_bps) {
  if (!(image_size_bits >= 0.0) || !(fpv_rate_bps >= 0.0)) throw ValidationError("traffic figures must be >= 0");
  SurveyEstimate est;
  est.track_count = static_cast<int>(plan.tracks.size());
  est.total_path_m = plan.path_length_m();
  est.duration_s = est.total_path_m / plan.speed_mps +
                   plan.turn_time_s * static_cast<double>(std::max(0, est.track_count - 1));
  est.image_count = static_cast<int>(schedule.events.size());
  est.data_volume_bits = est.image_count * image_size_bits;
  est.capture_interval_s = schedule.interval_s;
  est.mean_capture_rate_bps =
      (est.image_count > 0 && schedule.interval_s > 0.0) ? image_size_bits / schedule.interval_s : 0.0;
  est.fpv_rate_bps = fpv_rate_bps;
  return est;
}

}  // namespace agrisim
