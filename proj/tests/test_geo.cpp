#include <cmath>
#include <numbers>
#include <random>

#include "agrisim/error.hpp"
#include "agrisim/geo.hpp"
#include "doctest.h"

using namespace agrisim;

namespace {

constexpr double kR = 6371000.0;
constexpr double kDeg = std::numbers::pi / 180.0;
const GeoPoint kOrigin{49.0, 7.0};

Pose pose_at(LocalPoint p, double heading, double alt = 10.0) {
  return Pose{enu_to_wgs84(kOrigin, p), alt, heading};
}

}  // namespace

TEST_CASE("wgs84_to_enu identity and hand-evaluated offsets") {
  const LocalPoint z = wgs84_to_enu(kOrigin, kOrigin);
  CHECK(z.east_m == 0.0);
  CHECK(z.north_m == 0.0);

  const LocalPoint n = wgs84_to_enu(kOrigin, {49.0 + 9.0e-4, 7.0});
  CHECK(n.north_m == doctest::Approx(9.0e-4 * kDeg * kR).epsilon(1e-9));
  CHECK(n.north_m == doctest::Approx(100.07).epsilon(1e-4));
  CHECK(n.east_m == 0.0);

  const GeoPoint g = enu_to_wgs84(kOrigin, {100.0, 0.0});
  CHECK(g.lat_deg == 49.0);
  CHECK(g.lon_deg == doctest::Approx(7.0 + 100.0 / (kR * std::cos(49.0 * kDeg)) / kDeg).epsilon(1e-14));

  const GeoPoint o = enu_to_wgs84(kOrigin, {0.0, 0.0});
  CHECK(o.lat_deg == kOrigin.lat_deg);
  CHECK(o.lon_deg == kOrigin.lon_deg);
}

TEST_CASE("projection rejects points beyond the validity bound") {
  CHECK_THROWS_AS(wgs84_to_enu(kOrigin, {49.2, 7.0}), OutOfValidityRange);
  CHECK_THROWS_AS(enu_to_wgs84(kOrigin, {10001.0, 0.0}), OutOfValidityRange);
  CHECK_THROWS_AS(validate(GeoPoint{91.0, 0.0}), ValidationError);
  CHECK_NOTHROW(enu_to_wgs84(kOrigin, {9000.0, 0.0}));
}

TEST_CASE("round trip stays within 1e-9 degrees inside 2 km") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lat(-60.0, 60.0), lon(-179.0, 179.0), off(-2000.0, 2000.0);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const GeoPoint o{lat(rng), lon(rng)};
    const GeoPoint p = enu_to_wgs84(o, {off(rng), off(rng)});
    const GeoPoint q = enu_to_wgs84(o, wgs84_to_enu(o, p));
    worst = std::max({worst, std::abs(q.lat_deg - p.lat_deg), std::abs(q.lon_deg - p.lon_deg)});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("pixel_to_ground follows the image axis convention") {
  CameraModel cam;
  cam.width_px = 4000;
  cam.height_px = 3000;
  cam.gsd_m_per_px_at_ref = 0.001;
  const LocalPoint at{20.0, 30.0};
  const PixelCoord centre{2000.0, 1500.0};

  SUBCASE("centre pixel maps to the pose position") {
    const Pose pose = pose_at(at, 37.0);
    const LocalPoint g = pixel_to_ground(kOrigin, pose, cam, centre);
    const LocalPoint p = wgs84_to_enu(kOrigin, pose.position);
    CHECK(g.east_m == p.east_m);
    CHECK(g.north_m == p.north_m);
  }
  SUBCASE("heading 0: image right is east") {
    const LocalPoint g = pixel_to_ground(kOrigin, pose_at(at, 0.0), cam, {3000.0, 1500.0});
    CHECK(g.east_m == doctest::Approx(21.0).epsilon(1e-9));
    CHECK(g.north_m == doctest::Approx(30.0).epsilon(1e-9));
  }
  SUBCASE("heading 90: image right is south") {
    const LocalPoint g = pixel_to_ground(kOrigin, pose_at(at, 90.0), cam, {3000.0, 1500.0});
    CHECK(g.east_m == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(g.north_m == doctest::Approx(29.0).epsilon(1e-9));
  }
  SUBCASE("top of the frame is the flight direction") {
    const LocalPoint g = pixel_to_ground(kOrigin, pose_at(at, 0.0), cam, {2000.0, 500.0});
    CHECK(g.north_m == doctest::Approx(31.0).epsilon(1e-9));
  }
  SUBCASE("pixels outside the frame are rejected") {
    CHECK_THROWS_AS(pixel_to_ground(kOrigin, pose_at(at, 0.0), cam, {-1.0, 0.0}), PixelOutOfBounds);
    CHECK_THROWS_AS(pixel_to_ground(kOrigin, pose_at(at, 0.0), cam, {0.0, 3000.5}), PixelOutOfBounds);
  }
}

TEST_CASE("ground distance equals pixel distance times GSD") {
  CameraModel cam;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> x(0.0, cam.width_px), y(0.0, cam.height_px), h(0.0, 360.0),
      alt(5.0, 30.0);
  for (int i = 0; i < 500; ++i) {
    const Pose pose = pose_at({50.0, 50.0}, h(rng), alt(rng));
    const PixelCoord a{x(rng), y(rng)}, b{x(rng), y(rng)};
    const double px = std::hypot(a.x - b.x, a.y - b.y);
    const double ground = distance(pixel_to_ground(kOrigin, pose, cam, a), pixel_to_ground(kOrigin, pose, cam, b));
    CHECK(ground == doctest::Approx(px * cam.gsd_at(pose.altitude_agl_m)).epsilon(1e-9));
  }
}

TEST_CASE("ground_to_pixel inverts pixel_to_ground") {
  CameraModel cam;
  const Pose pose = pose_at({10.0, -5.0}, 123.0);
  const PixelCoord px{812.25, 2001.5};
  const PixelCoord back = ground_to_pixel(kOrigin, pose, cam, pixel_to_ground(kOrigin, pose, cam, px));
  CHECK(back.x == doctest::Approx(px.x).epsilon(1e-9));
  CHECK(back.y == doctest::Approx(px.y).epsilon(1e-9));
}

TEST_CASE("footprint size, scaling and orientation") {
  CameraModel cam;
  cam.width_px = 4000;
  cam.height_px = 3000;
  cam.gsd_m_per_px_at_ref = 0.001;

  const auto fp = footprint(kOrigin, pose_at({0.0, 0.0}, 0.0), cam);
  CHECK(fp[0].east_m == doctest::Approx(-2.0));
  CHECK(fp[0].north_m == doctest::Approx(-1.5));
  CHECK(fp[2].east_m == doctest::Approx(2.0));
  CHECK(fp[2].north_m == doctest::Approx(1.5));

  const auto fp2 = footprint(kOrigin, pose_at({0.0, 0.0}, 0.0, 20.0), cam);
  CHECK(distance(fp2[0], fp2[1]) == doctest::Approx(8.0));
  CHECK(distance(fp2[1], fp2[2]) == doctest::Approx(6.0));

  for (double h = 0.0; h < 360.0; h += 7.5) {
    const auto q = footprint(kOrigin, pose_at({3.0, 4.0}, h), cam);
    const std::vector<LocalPoint> ring(q.begin(), q.end());
    double area2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& a = ring[i];
      const auto& b = ring[(i + 1) % 4];
      area2 += a.east_m * b.north_m - b.east_m * a.north_m;
    }
    CHECK(area2 > 0.0);
    CHECK(area2 / 2.0 == doctest::Approx(12.0).epsilon(1e-9));
  }
}

TEST_CASE("default camera reproduces the survey swath") {
  const CameraModel cam;
  CHECK(cam.width_px * static_cast<double>(cam.height_px) == doctest::Approx(12.3e6).epsilon(0.01));
  CHECK(cam.cross_track_m(10.0) * 0.9 == doctest::Approx(3.93).epsilon(1e-3));
  CHECK(cam.along_track_m(10.0) * 0.9 / 3.0 == doctest::Approx(0.82).epsilon(1e-3));
}
