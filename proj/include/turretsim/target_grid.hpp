#pragma once

#include <array>

#include "turretsim/rng.hpp"

namespace turretsim {

// The engagement envelope: 9 ranges uniform over 1000-2000 m, 6 azimuths over
// 20-120 deg, 6 elevations over 5-30 deg. Range is sampled and recorded but
// no angular-error equation consumes it (no ballistics here).
struct TargetGrid {
  std::array<double, 9> range_m;
  std::array<double, 6> azimuth_deg;
  std::array<double, 6> elevation_deg;

  static TargetGrid paper_default();

  // Population statistics of a uniformly sampled coordinate list.
  static std::pair<double, double> population_stats(const double* values,
                                                    int count);
};

struct Target {
  int range_index = 0;
  int azimuth_index = 0;
  int elevation_index = 0;
  double range_m = 0.0;
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
};

// Independent uniform integer indices into the three coordinate lists,
// drawn in the order range, azimuth, elevation.
Target sample_target(const TargetGrid& grid, SplitMix64& rng);

}  // namespace turretsim
