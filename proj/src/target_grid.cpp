#include "turretsim/target_grid.hpp"

#include <cmath>

namespace turretsim {

namespace {

template <std::size_t N>
std::array<double, N> linspace(double lo, double hi) {
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (N - 1);
  return out;
}

}  // namespace

TargetGrid TargetGrid::paper_default() {
  TargetGrid grid;
  grid.range_m = linspace<9>(1000.0, 2000.0);
  grid.azimuth_deg = linspace<6>(20.0, 120.0);
  grid.elevation_deg = linspace<6>(5.0, 30.0);
  return grid;
}

std::pair<double, double> TargetGrid::population_stats(const double* values,
                                                       int count) {
  double mu = 0.0;
  for (int i = 0; i < count; ++i) mu += values[i];
  mu /= count;
  double ss = 0.0;
  for (int i = 0; i < count; ++i) ss += (values[i] - mu) * (values[i] - mu);
  return {mu, std::sqrt(ss / count)};
}

Target sample_target(const TargetGrid& grid, SplitMix64& rng) {
  Target t;
  t.range_index = static_cast<int>(rng.next_below(9));
  t.azimuth_index = static_cast<int>(rng.next_below(6));
  t.elevation_index = static_cast<int>(rng.next_below(6));
  t.range_m = grid.range_m[t.range_index];
  t.azimuth_deg = grid.azimuth_deg[t.azimuth_index];
  t.elevation_deg = grid.elevation_deg[t.elevation_index];
  return t;
}

}  // namespace turretsim
