#include "agrisim/geo.hpp"

#include <cmath>
#include <string>

#include "agrisim/error.hpp"

namespace agrisim {

namespace {

constexpr double kDegToRad = kPi / 180.0;

}  // namespace

double distance(LocalPoint a, LocalPoint b) { return std::hypot(a.east_m - b.east_m, a.north_m - b.north_m); }
double dot(LocalPoint a, LocalPoint b) { return a.east_m * b.east_m + a.north_m * b.north_m; }
double norm(LocalPoint a) { return std::hypot(a.east_m, a.north_m); }

LocalPoint heading_vector(double heading_deg) {
  const double h = heading_deg * kDegToRad;
  return {std::sin(h), std::cos(h)};
}

LocalPoint right_vector(double heading_deg) {
  const double h = heading_deg * kDegToRad;
  return {std::cos(h), -std::sin(h)};
}

double heading_of(LocalPoint d) {
  double h = std::atan2(d.east_m, d.north_m) / kDegToRad;
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  return h;
}

void validate(const GeoPoint& p) {
  if (!std::isfinite(p.lat_deg) || !std::isfinite(p.lon_deg) || p.lat_deg < -90.0 || p.lat_deg > 90.0 ||
      p.lon_deg < -180.0 || p.lon_deg > 180.0) {
    throw ValidationError("geo point out of range: lat=" + std::to_string(p.lat_deg) +
                          " lon=" + std::to_string(p.lon_deg));
  }
}

void CameraModel::validate() const {
  if (width_px <= 0 || height_px <= 0 || !(gsd_m_per_px_at_ref > 0.0) || !(ref_altitude_m > 0.0)) {
    throw ValidationError("camera model parameters must be positive");
  }
}

LocalPoint wgs84_to_enu(const GeoPoint& origin, const GeoPoint& p) {
  const LocalPoint l{(p.lon_deg - origin.lon_deg) * kEarthRadiusM * std::cos(origin.lat_deg * kDegToRad) * kDegToRad,
                     (p.lat_deg - origin.lat_deg) * kEarthRadiusM * kDegToRad};
  if (!(norm(l) <= kMaxLocalRangeM)) {
    throw OutOfValidityRange("points are " + std::to_string(norm(l)) + " m apart, projection valid to 10 km");
  }
  return l;
}

GeoPoint enu_to_wgs84(const GeoPoint& origin, const LocalPoint& l) {
  if (!(norm(l) <= kMaxLocalRangeM)) {
    throw OutOfValidityRange("local offset " + std::to_string(norm(l)) + " m exceeds the 10 km validity bound");
  }
  return {origin.lat_deg + l.north_m / (kEarthRadiusM * kDegToRad),
          origin.lon_deg + l.east_m / (kEarthRadiusM * std::cos(origin.lat_deg * kDegToRad) * kDegToRad)};
}

bool in_image(const CameraModel& cam, PixelCoord px) {
  return px.x >= 0.0 && px.x <= cam.width_px && px.y >= 0.0 && px.y <= cam.height_px;
}

LocalPoint pixel_to_ground(const GeoPoint& origin, const Pose& pose, const CameraModel& cam, PixelCoord px) {
  if (!in_image(cam, px)) {
    throw PixelOutOfBounds("pixel (" + std::to_string(px.x) + ", " + std::to_string(px.y) + ") outside " +
                           std::to_string(cam.width_px) + "x" + std::to_string(cam.height_px) + " image");
  }
  if (!(pose.altitude_agl_m > 0.0)) throw ValidationError("pose altitude must be positive for projection");
  const double gsd = cam.gsd_at(pose.altitude_agl_m);
  const double right = (px.x - 0.5 * cam.width_px) * gsd;
  const double forward = (0.5 * cam.height_px - px.y) * gsd;
  const LocalPoint center = wgs84_to_enu(origin, pose.position);
  return center + right * right_vector(pose.heading_deg) + forward * heading_vector(pose.heading_deg);
}

PixelCoord ground_to_pixel(const GeoPoint& origin, const Pose& pose, const CameraModel& cam, LocalPoint ground) {
  if (!(pose.altitude_agl_m > 0.0)) throw ValidationError("pose altitude must be positive for projection");
  const double gsd = cam.gsd_at(pose.altitude_agl_m);
  const LocalPoint rel = ground - wgs84_to_enu(origin, pose.position);
  const double right = dot(rel, right_vector(pose.heading_deg));
  const double forward = dot(rel, heading_vector(pose.heading_deg));
  return {0.5 * cam.width_px + right / gsd, 0.5 * cam.height_px - forward / gsd};
}

std::array<LocalPoint, 4> footprint(const GeoPoint& origin, const Pose& pose, const CameraModel& cam) {
  if (!(pose.altitude_agl_m > 0.0)) throw ValidationError("pose altitude must be positive for projection");
  const double half_w = 0.5 * cam.cross_track_m(pose.altitude_agl_m);
  const double half_h = 0.5 * cam.along_track_m(pose.altitude_agl_m);
  const LocalPoint c = wgs84_to_enu(origin, pose.position);
  const LocalPoint r = right_vector(pose.heading_deg);
  const LocalPoint f = heading_vector(pose.heading_deg);
  return {c + (-half_w) * r + (-half_h) * f, c + half_w * r + (-half_h) * f, c + half_w * r + half_h * f,
          c + (-half_w) * r + half_h * f};
}

}  // namespace agrisim
