#include <algorithm>
#include <cmath>
#include <random>

#include "agrisim/error.hpp"
#include "agrisim/field.hpp"
#include "agrisim/mission.hpp"
#include "doctest.h"

using namespace agrisim;

namespace {

const GeoPoint kOrigin{49.4240, 7.7530};

struct Survey {
  FieldPolygon field;
  CaptureSchedule captures;
};

Survey survey(double w, double h) {
  Survey s{FieldPolygon::rectangle(w, h), {}};
  const auto plan = plan_coverage(s.field, 3.93, 10.0, 3.0, 0.0);
  s.captures = capture_schedule(plan, CameraModel{}, 0.1, kOrigin);
  return s;
}

BBox box(int id, double w_m, double h_m) {
  BBox b;
  b.id = id;
  b.gsd_m_per_px = 0.001;
  b.width_px = w_m / b.gsd_m_per_px;
  b.height_px = h_m / b.gsd_m_per_px;
  b.center_px = {2000.0, 1400.0};
  return b;
}

CaptureEvent capture_at(int id, LocalPoint p, double heading) {
  return CaptureEvent{static_cast<double>(id), Pose{enu_to_wgs84(kOrigin, p), 10.0, heading}, id, 0};
}

}  // namespace

TEST_CASE("generate_field is deterministic and respects the polygon") {
  const auto f = FieldPolygon::rectangle(100, 100);
  CHECK(generate_field(1, f, 0.0, 0.1, 0.02).plants.empty());
  const auto a = generate_field(9, f, 300.0, 0.1, 0.02);
  const auto b = generate_field(9, f, 300.0, 0.1, 0.02);
  REQUIRE(a.plants.size() == b.plants.size());
  for (std::size_t i = 0; i < a.plants.size(); ++i) {
    CHECK(a.plants[i].position == b.plants[i].position);
    CHECK(a.plants[i].diameter_m == b.plants[i].diameter_m);
    CHECK(f.contains(a.plants[i].position));
    CHECK(a.plants[i].diameter_m >= kMinPlantDiameterM);
  }
  const auto c = generate_field(10, f, 300.0, 0.1, 0.02);
  CHECK((c.plants.size() != a.plants.size() || !(c.plants[0].position == a.plants[0].position)));
  CHECK(generate_field_count(4, f, 17, 0.1, 0.0).plants.size() == 17);
}

TEST_CASE("plant count is Poisson over seeds") {
  const auto f = FieldPolygon::rectangle(100, 100);
  double sum = 0.0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) sum += static_cast<double>(generate_field(s, f, 300.0, 0.1, 0.02).plants.size());
  const double mean = sum / seeds;
  CHECK(std::abs(mean - 300.0) < 3.0 * std::sqrt(300.0 / seeds));
}

TEST_CASE("noiseless detection yields one box per plant and covering image") {
  const auto s = survey(30, 30);
  const auto truth = generate_field_count(2, s.field, 25, 0.1, 0.02);
  const CameraModel cam;
  const auto boxes = simulate_detections(truth, s.captures.events, cam, DetectorModel{}, 2, kOrigin);
  std::size_t expected = 0;
  for (const auto& c : s.captures.events) {
    for (const auto& p : truth.plants) {
      const PixelCoord px = ground_to_pixel(kOrigin, c.pose, cam, p.position);
      if (in_image(cam, px)) ++expected;
    }
  }
  CHECK(boxes.size() == expected);
  for (const auto& b : boxes) {
    REQUIRE(b.truth_plant_id >= 0);
    const auto& plant = truth.plants[static_cast<std::size_t>(b.truth_plant_id)];
    const auto& cap = s.captures.events[static_cast<std::size_t>(b.image_id)];
    const PixelCoord px = ground_to_pixel(kOrigin, cap.pose, cam, plant.position);
    CHECK(b.center_px.x == doctest::Approx(px.x));
    CHECK(b.center_px.y == doctest::Approx(px.y));
    CHECK(b.width_px * b.gsd_m_per_px == doctest::Approx(plant.diameter_m));
  }
}

TEST_CASE("detection_prob 0 leaves only false positives") {
  const auto s = survey(30, 30);
  const auto truth = generate_field_count(2, s.field, 25, 0.1, 0.02);
  DetectorModel det;
  det.detection_prob = 0.0;
  det.false_positives_per_image = 0.5;
  const auto boxes = simulate_detections(truth, s.captures.events, CameraModel{}, det, 3, kOrigin);
  CHECK_FALSE(boxes.empty());
  for (const auto& b : boxes) CHECK(b.truth_plant_id == -1);
}

TEST_CASE("a plant in the overlap strip is seen by both images") {
  const CameraModel cam;
  const double stride = cam.along_track_m(10.0) * 0.9;
  const std::vector<CaptureEvent> caps{capture_at(0, {0.0, 0.0}, 0.0), capture_at(1, {0.0, stride}, 0.0)};
  // Overlap strip spans north in [stride - L/2, L/2].
  const double mid = 0.5 * ((stride - cam.along_track_m(10.0) / 2.0) + cam.along_track_m(10.0) / 2.0);
  GroundTruth truth{{Plant{0, {0.3, mid}, 0.1}}};
  const auto boxes = simulate_detections(truth, caps, cam, DetectorModel{}, 1, kOrigin);
  REQUIRE(boxes.size() == 2);
  CHECK(boxes[0].image_id != boxes[1].image_id);
}

TEST_CASE("empirical detection rate converges to detection_prob") {
  const auto s = survey(20, 20);
  DetectorModel det;
  det.detection_prob = 0.7;
  long visible = 0, detected = 0;
  for (int seed = 0; seed < 200; ++seed) {
    const auto truth = generate_field_count(seed, s.field, 20, 0.1, 0.02);
    visible += static_cast<long>(simulate_detections(truth, s.captures.events, CameraModel{}, DetectorModel{}, seed, kOrigin).size());
    detected += static_cast<long>(simulate_detections(truth, s.captures.events, CameraModel{}, det, seed, kOrigin).size());
  }
  const double rate = static_cast<double>(detected) / static_cast<double>(visible);
  CHECK(std::abs(rate - 0.7) < 3.0 * std::sqrt(0.7 * 0.3 / static_cast<double>(visible)));
}

TEST_CASE("filter_boxes thresholds") {
  CHECK(filter_boxes({box(0, 0.05, 0.05)}, 0.005, 0.04).empty());
  CHECK(filter_boxes({box(0, 0.40, 0.02)}, 0.005, 0.04).empty());
  CHECK(filter_boxes({box(0, 0.40, 0.02)}, 0.005, 0.0).size() == 1);
  CHECK(filter_boxes({box(0, 0.10, 0.10)}, 0.005, 0.04).size() == 1);
  const std::vector<BBox> all{box(0, 0.05, 0.05), box(1, 0.4, 0.02), box(2, 0.1, 0.1), box(3, 0.01, 0.01)};
  CHECK(filter_boxes(all, 0.0, 0.0).size() == all.size());
  const auto once = filter_boxes(all, 0.005, 0.04);
  const auto twice = filter_boxes(once, 0.005, 0.04);
  REQUIRE(once.size() == twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].id == twice[i].id);
}

TEST_CASE("georef_and_merge clusters by merge radius") {
  const CameraModel cam;
  const std::vector<CaptureEvent> caps{capture_at(0, {0.0, 0.0}, 0.0)};
  const double g = cam.gsd_at(10.0);
  auto at = [&](int id, double east) {
    BBox b;
    b.id = id;
    b.image_id = 0;
    b.gsd_m_per_px = g;
    b.width_px = b.height_px = 0.1 / g;
    b.center_px = {cam.width_px / 2.0 + east / g, cam.height_px / 2.0};
    return b;
  };
  const auto one = georef_and_merge({at(0, 0.0), at(1, 0.2)}, caps, cam, 0.3, kOrigin);
  REQUIRE(one.targets.size() == 1);
  CHECK(one.targets[0].position.east_m == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(one.targets[0].support == std::vector<int>{0, 1});
  CHECK(georef_and_merge({at(0, 0.0), at(1, 1.0)}, caps, cam, 0.3, kOrigin).targets.size() == 2);

  BBox stray = at(5, 0.0);
  stray.image_id = 42;
  CHECK_THROWS_AS(georef_and_merge({stray}, caps, cam, 0.3, kOrigin), UnknownImageId);
}

TEST_CASE("noiseless pipeline localizes every plant within one GSD") {
  const auto s = survey(40, 40);
  const CameraModel cam;
  const double gsd = cam.gsd_at(10.0);
  for (int seed = 0; seed < 10; ++seed) {
    const auto truth = generate_field(seed, s.field, 100.0, 0.1, 0.02);
    const auto boxes = simulate_detections(truth, s.captures.events, cam, DetectorModel{}, seed, kOrigin);
    const auto targets = georef_and_merge(boxes, s.captures.events, cam, 0.3, kOrigin);
    const auto covered = plants_in_coverage(truth, s.captures.events, cam, kOrigin);
    for (const auto& t : targets.targets) {
      double best = 1e9;
      for (const auto& p : truth.plants) best = std::min(best, distance(p.position, t.position));
      CHECK(best < gsd);
    }
    // Plants closer than the merge radius legitimately collapse into one target.
    std::size_t expected = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true));
    bool crowded = false;
    for (std::size_t i = 0; i < truth.plants.size(); ++i) {
      for (std::size_t j = i + 1; j < truth.plants.size(); ++j) {
        if (distance(truth.plants[i].position, truth.plants[j].position) < 0.3) crowded = true;
      }
    }
    if (!crowded) CHECK(targets.targets.size() == expected);
  }
}

TEST_CASE("merge result does not depend on box order") {
  const auto s = survey(30, 30);
  DetectorModel det;
  det.position_noise_sigma_m = 0.05;
  det.false_positives_per_image = 0.3;
  const auto truth = generate_field(5, s.field, 400.0, 0.1, 0.02);
  auto boxes = simulate_detections(truth, s.captures.events, CameraModel{}, det, 5, kOrigin);
  const auto ref = georef_and_merge(boxes, s.captures.events, CameraModel{}, 0.3, kOrigin);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(boxes.begin(), boxes.end(), rng);
    const auto got = georef_and_merge(boxes, s.captures.events, CameraModel{}, 0.3, kOrigin);
    REQUIRE(got.targets.size() == ref.targets.size());
    for (std::size_t i = 0; i < ref.targets.size(); ++i) {
      CHECK(got.targets[i].support == ref.targets[i].support);
      CHECK(got.targets[i].position.east_m == doctest::Approx(ref.targets[i].position.east_m).epsilon(1e-12));
      CHECK(got.targets[i].position.north_m == doctest::Approx(ref.targets[i].position.north_m).epsilon(1e-12));
    }
  }
  for (std::size_t i = 0; i < ref.targets.size(); ++i) {
    for (std::size_t j = i + 1; j < ref.targets.size(); ++j) {
      CHECK(distance(ref.targets[i].position, ref.targets[j].position) >= 0.3);
    }
  }
}
