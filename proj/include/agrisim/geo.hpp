#pragma once

#include <array>

namespace agrisim {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kPi = 3.14159265358979323846;
// Field-scale validity bound of the tangent-plane projection.
inline constexpr double kMaxLocalRangeM = 10000.0;

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

// East/north offsets in meters from a declared field origin.
struct LocalPoint {
  double east_m = 0.0;
  double north_m = 0.0;

  friend LocalPoint operator+(LocalPoint a, LocalPoint b) { return {a.east_m + b.east_m, a.north_m + b.north_m}; }
  friend LocalPoint operator-(LocalPoint a, LocalPoint b) { return {a.east_m - b.east_m, a.north_m - b.north_m}; }
  friend LocalPoint operator*(double s, LocalPoint a) { return {s * a.east_m, s * a.north_m}; }
  friend bool operator==(const LocalPoint&, const LocalPoint&) = default;
};

double distance(LocalPoint a, LocalPoint b);
double dot(LocalPoint a, LocalPoint b);
double norm(LocalPoint a);

// Unit vector pointing along a compass heading (degrees clockwise from north).
LocalPoint heading_vector(double heading_deg);
// Unit vector 90 degrees clockwise from the heading.
LocalPoint right_vector(double heading_deg);
// Compass heading of a direction vector, in [0, 360).
double heading_of(LocalPoint direction);

struct Pose {
  GeoPoint position;
  double altitude_agl_m = 0.0;
  double heading_deg = 0.0;
};

// Continuous pixel coordinates: x grows to the right, y grows downward, the
// image center is (width/2, height/2). The top edge of the frame faces the
// flight direction.
struct PixelCoord {
  double x = 0.0;
  double y = 0.0;
};

// Nadir pinhole camera. Ground sample distance scales linearly with altitude.
struct CameraModel {
  int width_px = 4433;
  int height_px = 2775;
  double gsd_m_per_px_at_ref = 0.000985;
  double ref_altitude_m = 10.0;

  double gsd_at(double altitude_m) const { return gsd_m_per_px_at_ref * altitude_m / ref_altitude_m; }
  double cross_track_m(double altitude_m) const { return width_px * gsd_at(altitude_m); }
  double along_track_m(double altitude_m) const { return height_px * gsd_at(altitude_m); }
  void validate() const;
};

void validate(const GeoPoint& p);

LocalPoint wgs84_to_enu(const GeoPoint& origin, const GeoPoint& p);
GeoPoint enu_to_wgs84(const GeoPoint& origin, const LocalPoint& l);

LocalPoint pixel_to_ground(const GeoPoint& origin, const Pose& pose, const CameraModel& cam, PixelCoord px);
// Inverse of pixel_to_ground. The result may lie outside the image.
PixelCoord ground_to_pixel(const GeoPoint& origin, const Pose& pose, const CameraModel& cam, LocalPoint ground);
bool in_image(const CameraModel& cam, PixelCoord px);

// Ground corners of the image, counterclockwise in the local frame:
// rear-left, rear-right, front-right, front-left.
std::array<LocalPoint, 4> footprint(const GeoPoint& origin, const Pose& pose, const CameraModel& cam);

}  // namespace agrisim
