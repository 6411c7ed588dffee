#pragma once

#include <vector>

#include "agrisim/geo.hpp"

namespace agrisim {

// Simple polygon in the local frame, stored counterclockwise.
class FieldPolygon {
 public:
  FieldPolygon() = default;
  // Validates the ring (>= 3 finite vertices, non-self-intersecting, non-zero
  // area) and reorders clockwise input to counterclockwise.
  explicit FieldPolygon(std::vector<LocalPoint> vertices);

  static FieldPolygon rectangle(double width_m, double height_m, LocalPoint corner = {});

  const std::vector<LocalPoint>& vertices() const noexcept { return vertices_; }
  double area_m2() const;
  bool contains(LocalPoint p) const;
  // Axis-aligned bounds as {min, max}.
  std::pair<LocalPoint, LocalPoint> bounds() const;

 private:
  std::vector<LocalPoint> vertices_;
};

double signed_area(const std::vector<LocalPoint>& ring);
bool is_simple(const std::vector<LocalPoint>& ring);

struct Track {
  LocalPoint start;
  LocalPoint end;
  double heading_deg = 0.0;
  // Index of the parallel sweep line this segment was clipped from.
  int line_index = 0;

  double length_m() const { return distance(start, end); }
};

struct SurveyPlan {
  std::vector<Track> tracks;
  double altitude_agl_m = 10.0;
  double speed_mps = 3.0;
  double track_spacing_m = 3.93;
  double sweep_heading_deg = 0.0;
  double turn_time_s = 3.0;

  double track_length_m() const;
  // Track lengths plus the connecting legs between consecutive tracks.
  double path_length_m() const;
};

struct CaptureEvent {
  double time_s = 0.0;
  Pose pose;
  int image_id = 0;
  int track_index = 0;
};

struct CaptureSchedule {
  std::vector<CaptureEvent> events;
  double stride_m = 0.0;
  double interval_s = 0.0;
};

struct SurveyEstimate {
  double total_path_m = 0.0;
  double duration_s = 0.0;
  int image_count = 0;
  int track_count = 0;
  double data_volume_bits = 0.0;
  double capture_interval_s = 0.0;
  double mean_capture_rate_bps = 0.0;
  double fpv_rate_bps = 0.0;
};

inline constexpr double kDefaultImageSizeBits = 192e6;
inline constexpr double kDefaultFpvRateBps = 6e6;

// Boustrophedon coverage: parallel tracks along sweep_heading_deg, offset at
// spacing_m perpendicular to it, centred in the field's perpendicular extent
// and clipped to the polygon. Consecutive sweep lines alternate direction.
SurveyPlan plan_coverage(const FieldPolygon& field, double spacing_m, double altitude_m, double speed_mps,
                         double sweep_heading_deg, double turn_time_s = 3.0);

CaptureSchedule capture_schedule(const SurveyPlan& plan, const CameraModel& cam, double overlap,
                                 const GeoPoint& origin);

SurveyEstimate survey_estimate(const SurveyPlan& plan, const CaptureSchedule& schedule,
                               double image_size_bits = kDefaultImageSizeBits,
                               double fpv_rate_bps = kDefaultFpvRateBps);

}  // namespace agrisim
