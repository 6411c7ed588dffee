#include "agrisim/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "agrisim/error.hpp"
#include "agrisim/rng.hpp"

namespace agrisim {

namespace {

constexpr std::uint64_t kFieldStream = 0x6669656c64ULL;
constexpr std::uint64_t kDetectStream = 0x646574656374ULL;

double truncated_normal(Rng& rng, double mean, double sigma, double lower) {
  if (sigma <= 0.0) return std::max(mean, lower);
  std::normal_distribution<double> dist(mean, sigma);
  for (int i = 0; i < 1000; ++i) {
    const double v = dist(rng);
    if (v >= lower) return v;
  }
  return lower;
}

GroundTruth place_plants(Rng& rng, const FieldPolygon& polygon, long long count, double mean, double sigma) {
  if (!(mean > 0.0) || !(sigma >= 0.0)) throw ValidationError("plant diameter mean must be > 0 and sigma >= 0");
  const auto [lo, hi] = polygon.bounds();
  std::uniform_real_distribution<double> ue(lo.east_m, hi.east_m);
  std::uniform_real_distribution<double> un(lo.north_m, hi.north_m);
  GroundTruth truth;
  truth.plants.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    LocalPoint p;
    do {
      p = {ue(rng), un(rng)};
    } while (!polygon.contains(p));
    truth.plants.push_back({static_cast<int>(i), p, truncated_normal(rng, mean, sigma, kMinPlantDiameterM)});
  }
  return truth;
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Smaller index becomes the root so roots do not depend on union order.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

void DetectorModel::validate() const {
  if (!(detection_prob >= 0.0 && detection_prob <= 1.0)) throw ValidationError("detection_prob must be in [0, 1]");
  if (!(false_positives_per_image >= 0.0)) throw ValidationError("false_positives_per_image must be >= 0");
  if (!(position_noise_sigma_m >= 0.0) || !(bbox_size_noise >= 0.0) || !(fp_diameter_sigma_m >= 0.0)) {
    throw ValidationError("detector noise sigmas must be >= 0");
  }
  if (!(fp_diameter_mean_m > 0.0)) throw ValidationError("fp_diameter_mean_m must be > 0");
}

GroundTruth generate_field(std::uint64_t seed, const FieldPolygon& polygon, double density_per_ha,
                           double diameter_mean_m, double diameter_sigma_m) {
  if (!(density_per_ha >= 0.0)) throw ValidationError("plant density must be >= 0");
  Rng rng(derive_seed(seed, kFieldStream));
  const double mean_count = density_per_ha * polygon.area_m2() / 10000.0;
  long long count = 0;
  if (mean_count > 0.0) count = std::poisson_distribution<long long>(mean_count)(rng);
  return place_plants(rng, polygon, count, diameter_mean_m, diameter_sigma_m);
}

GroundTruth generate_field_count(std::uint64_t seed, const FieldPolygon& polygon, int count, double diameter_mean_m,
                                 double diameter_sigma_m) {
  if (count < 0) throw ValidationError("plant count must be >= 0");
  Rng rng(derive_seed(seed, kFieldStream));
  return place_plants(rng, polygon, count, diameter_mean_m, diameter_sigma_m);
}

std::vector<BBox> simulate_detections(const GroundTruth& truth, const std::vector<CaptureEvent>& captures,
                                      const CameraModel& cam, const DetectorModel& detector, std::uint64_t seed,
                                      const GeoPoint& origin) {
  detector.validate();
  cam.validate();
  std::vector<BBox> boxes;
  int next_id = 0;
  for (const auto& cap : captures) {
    Rng rng(derive_seed(seed, kDetectStream, static_cast<std::uint64_t>(cap.image_id)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double gsd = cam.gsd_at(cap.pose.altitude_agl_m);

    auto make_box = [&](PixelCoord c, double diameter_m, double score, int plant_id) {
      const double size_px = diameter_m / gsd;
      const double sw = detector.bbox_size_noise > 0.0 ? detector.bbox_size_noise * gauss(rng) : 0.0;
      const double sh = detector.bbox_size_noise > 0.0 ? detector.bbox_size_noise * gauss(rng) : 0.0;
      BBox b;
      b.id = next_id++;
      b.image_id = cap.image_id;
      b.center_px = c;
      // Extents stay positive however large the noise draw.
      b.width_px = std::max(size_px * (1.0 + sw), 1.0);
      b.height_px = std::max(size_px * (1.0 + sh), 1.0);
      b.score = score;
      b.gsd_m_per_px = gsd;
      b.truth_plant_id = plant_id;
      boxes.push_back(b);
    };

    for (const auto& plant : truth.plants) {
      const PixelCoord px = ground_to_pixel(origin, cap.pose, cam, plant.position);
      if (!in_image(cam, px)) continue;
      if (unit(rng) >= detector.detection_prob) continue;
      PixelCoord c = px;
      if (detector.position_noise_sigma_m > 0.0) {
        const double s = detector.position_noise_sigma_m / gsd;
        c.x += s * gauss(rng);
        c.y += s * gauss(rng);
        c.x = std::clamp(c.x, 0.0, static_cast<double>(cam.width_px));
        c.y = std::clamp(c.y, 0.0, static_cast<double>(cam.height_px));
      }
      make_box(c, plant.diameter_m, 0.6 + 0.4 * unit(rng), plant.id);
    }

    if (detector.false_positives_per_image > 0.0) {
      const int n_fp = std::poisson_distribution<int>(detector.false_positives_per_image)(rng);
      for (int k = 0; k < n_fp; ++k) {
        const PixelCoord c{unit(rng) * cam.width_px, unit(rng) * cam.height_px};
        const double d = truncated_normal(rng, detector.fp_diameter_mean_m, detector.fp_diameter_sigma_m,
                                          kMinPlantDiameterM);
        make_box(c, d, 0.3 + 0.6 * unit(rng), -1);
      }
    }
  }
  return boxes;
}

std::vector<bool> plants_in_coverage(const GroundTruth& truth, const std::vector<CaptureEvent>& captures,
                                     const CameraModel& cam, const GeoPoint& origin) {
  std::vector<bool> covered(truth.plants.size(), false);
  for (const auto& cap : captures) {
    for (std::size_t i = 0; i < truth.plants.size(); ++i) {
      if (!covered[i] && in_image(cam, ground_to_pixel(origin, cap.pose, cam, truth.plants[i].position))) {
        covered[i] = true;
      }
    }
  }
  return covered;
}

std::vector<BBox> filter_boxes(const std::vector<BBox>& boxes, double min_area_m2, double min_area_to_length_m) {
  if (!(min_area_m2 >= 0.0) || !(min_area_to_length_m >= 0.0)) throw ValidationError("filter thresholds must be >= 0");
  std::vector<BBox> kept;
  kept.reserve(boxes.size());
  for (const auto& b : boxes) {
    const double area = b.ground_area_m2();
    const double length = std::max(b.width_px, b.height_px) * b.gsd_m_per_px;
    if (area >= min_area_m2 && area / length >= min_area_to_length_m) kept.push_back(b);
  }
  return kept;
}

TargetList georef_and_merge(const std::vector<BBox>& boxes_in, const std::vector<CaptureEvent>& captures,
                            const CameraModel& cam, double merge_radius_m, const GeoPoint& origin) {
  if (!(merge_radius_m >= 0.0)) throw ValidationError("merge radius must be >= 0");
  std::unordered_map<int, const CaptureEvent*> by_image;
  for (const auto& c : captures) by_image.emplace(c.image_id, &c);

  std::vector<BBox> boxes = boxes_in;
  std::sort(boxes.begin(), boxes.end(), [](const BBox& a, const BBox& b) { return a.id < b.id; });

  const std::size_t n = boxes.size();
  std::vector<LocalPoint> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = by_image.find(boxes[i].image_id);
    if (it == by_image.end()) throw UnknownImageId("box " + std::to_string(boxes[i].id) + " references unknown image " +
                                                   std::to_string(boxes[i].image_id));
    pos[i] = pixel_to_ground(origin, it->second->pose, cam, boxes[i].center_px);
  }

  // Single linkage over a sweep sorted by east coordinate.
  DisjointSet ds(n);
  std::vector<int> by_east(n);
  std::iota(by_east.begin(), by_east.end(), 0);
  std::sort(by_east.begin(), by_east.end(), [&](int a, int b) {
    return pos[a].east_m < pos[b].east_m || (pos[a].east_m == pos[b].east_m && a < b);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int a = by_east[i];
      const int b = by_east[j];
      if (pos[b].east_m - pos[a].east_m > merge_radius_m) break;
      if (distance(pos[a], pos[b]) <= merge_radius_m) ds.unite(a, b);
    }
  }

  std::vector<std::vector<int>> clusters;
  {
    std::unordered_map<int, std::size_t> slot;
    for (std::size_t i = 0; i < n; ++i) {
      const int r = ds.find(static_cast<int>(i));
      auto [it, inserted] = slot.emplace(r, clusters.size());
      if (inserted) clusters.emplace_back();
      clusters[it->second].push_back(static_cast<int>(i));
    }
  }

  auto centroid = [&](const std::vector<int>& members) {
    LocalPoint s;
    for (int m : members) s = s + pos[m];
    return (1.0 / static_cast<double>(members.size())) * s;
  };

  // Centroids closer than the merge radius are merged, closest pair first.
  std::vector<LocalPoint> cent;
  for (const auto& c : clusters) cent.push_back(centroid(c));
  while (merge_radius_m > 0.0 && clusters.size() > 1) {
    double best = merge_radius_m;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double d = distance(cent[i], cent[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (best >= merge_radius_m) break;
    clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(clusters[bi].begin(), clusters[bi].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    cent.erase(cent.begin() + static_cast<std::ptrdiff_t>(bj));
    cent[bi] = centroid(clusters[bi]);
  }

  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  TargetList out;
  out.merge_radius_m = merge_radius_m;
  for (const auto& members : clusters) {
    Target t;
    t.id = static_cast<int>(out.targets.size());
    t.position = centroid(members);
    double size_sum = 0.0;
    for (int m : members) {
      const BBox& b = boxes[static_cast<std::size_t>(m)];
      t.support.push_back(b.id);
      t.source_images.push_back(b.image_id);
      t.confidence = std::max(t.confidence, b.score);
      size_sum += 0.5 * (b.width_px + b.height_px) * b.gsd_m_per_px;
    }
    t.diameter_m = size_sum / static_cast<double>(members.size());
    std::sort(t.source_images.begin(), t.source_images.end());
    t.source_images.erase(std::unique(t.source_images.begin(), t.source_images.end()), t.source_images.end());
    out.targets.push_back(std::move(t));
  }
  return out;
}

}  // namespace agrisim
