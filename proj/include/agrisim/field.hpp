#pragma once

#include <cstdint>
#include <vector>

#include "agrisim/geo.hpp"
#include "agrisim/mission.hpp"

namespace agrisim {

struct Plant {
  int id = 0;
  LocalPoint position;
  double diameter_m = 0.1;
};

struct GroundTruth {
  std::vector<Plant> plants;
};

inline constexpr double kMinPlantDiameterM = 0.02;

// Outcome model of the aerial detector; it stands in for the neural network.
struct DetectorModel {
  double detection_prob = 1.0;
  double false_positives_per_image = 0.0;
  double position_noise_sigma_m = 0.0;
  // Relative sigma applied to box extents.
  double bbox_size_noise = 0.0;
  double fp_diameter_mean_m = 0.1;
  double fp_diameter_sigma_m = 0.02;

  void validate() const;
};

struct BBox {
  int id = 0;
  int image_id = 0;
  PixelCoord center_px;
  double width_px = 0.0;
  double height_px = 0.0;
  double score = 1.0;
  // Ground sample distance of the source image.
  double gsd_m_per_px = 0.0;
  // Simulation provenance: index of the plant that produced the box, -1 for false positives.
  int truth_plant_id = -1;

  double ground_area_m2() const { return width_px * height_px * gsd_m_per_px * gsd_m_per_px; }
};

struct Target {
  int id = 0;
  LocalPoint position;
  double diameter_m = 0.0;
  double confidence = 0.0;
  std::vector<int> support;        // contributing box ids, ascending
  std::vector<int> source_images;  // ascending, unique
};

struct TargetList {
  std::vector<Target> targets;
  double merge_radius_m = 0.3;
};

// Poisson(density * area) plants uniformly inside the polygon, diameters from
// a normal truncated below at kMinPlantDiameterM.
GroundTruth generate_field(std::uint64_t seed, const FieldPolygon& polygon, double density_per_ha,
                           double diameter_mean_m, double diameter_sigma_m);
// Same placement model with an exact plant count.
GroundTruth generate_field_count(std::uint64_t seed, const FieldPolygon& polygon, int count, double diameter_mean_m,
                                 double diameter_sigma_m);

std::vector<BBox> simulate_detections(const GroundTruth& truth, const std::vector<CaptureEvent>& captures,
                                      const CameraModel& cam, const DetectorModel& detector, std::uint64_t seed,
                                      const GeoPoint& origin);

// Per plant: whether its centre falls inside at least one captured image.
std::vector<bool> plants_in_coverage(const GroundTruth& truth, const std::vector<CaptureEvent>& captures,
                                     const CameraModel& cam, const GeoPoint& origin);

std::vector<BBox> filter_boxes(const std::vector<BBox>& boxes, double min_area_m2, double min_area_to_length_m);

TargetList georef_and_merge(const std::vector<BBox>& boxes, const std::vector<CaptureEvent>& captures,
                            const CameraModel& cam, double merge_radius_m, const GeoPoint& origin);

}  // namespace agrisim
