#pragma once

#include "agrisim/scenario.hpp"

namespace agrisim::testing {

// Noiseless detection, exact verification, 100 mm plants, one nozzle per plant.
inline Scenario perfect_scenario(int plants = 20, std::uint64_t seed = 3) {
  Scenario s;
  s.seed = seed;
  s.field = {{0.0, 0.0}, {50.0, 0.0}, {50.0, 50.0}, {0.0, 50.0}};
  s.plants.count = plants;
  s.plants.diameter_sigma_m = 0.0;
  s.verify.lateral_sigma_m = 0.0;
  s.boom.nozzle_spray_width_m = s.boom.pitch_m();
  return s;
}

// Noisy quarter-hectare scenario used for conservation properties.
inline Scenario noisy_scenario(std::uint64_t seed, double density_per_ha) {
  Scenario s;
  s.seed = seed;
  s.field = {{0.0, 0.0}, {50.0, 0.0}, {50.0, 50.0}, {0.0, 50.0}};
  s.plants.density_per_ha = density_per_ha;
  s.detector.detection_prob = 0.85;
  s.detector.false_positives_per_image = 0.05;
  s.detector.position_noise_sigma_m = 0.03;
  s.detector.bbox_size_noise = 0.1;
  s.verify.p_confirm = 0.9;
  s.verify.p_false_spray = 0.2;
  s.robot.tank_L = 0.15;
  return s;
}

}  // namespace agrisim::testing
