#include "turretsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace turretsim {

ErrorStats error_stats(std::span<const double> samples) {
  if (samples.empty())
    throw std::invalid_argument("error_stats: need at least one sample");
  const double n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mu = sum / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mu) * (x - mu);
  ErrorStats stats;
  stats.mu = mu;
  stats.sigma = std::sqrt(ss / n);
  stats.n = samples.size();
  if (mu != 0.0) stats.cv = stats.sigma / std::abs(mu);
  return stats;
}

Proportionality proportionality_constants(const ErrorStats& err,
                                          const ErrorStats& ref) {
  if (ref.mu == 0.0 || ref.sigma == 0.0)
    throw std::invalid_argument(
        "proportionality_constants: reference statistic is zero");
  return {std::abs(err.mu / ref.mu), err.sigma / ref.sigma};
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) /
         (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double ks_statistic_vs_normal(std::span<const double> samples, double mu,
                              double sigma) {
  if (samples.empty())
    throw std::invalid_argument("ks_statistic: need samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf((sorted[i] - mu) / sigma);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
    d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c / std::sqrt(static_cast<double>(n));
}

Histogram histogram(std::span<const double> samples, int bins) {
  if (samples.empty() || bins < 1)
    throw std::invalid_argument("histogram: bad arguments");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;

  Histogram h;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + width * i;
  h.counts.assign(bins, 0);
  for (double x : samples) {
    int idx = static_cast<int>((x - lo) / width);
    idx = std::clamp(idx, 0, bins - 1);
    ++h.counts[idx];
  }
  h.density.resize(bins);
  const double scale = 1.0 / (static_cast<double>(samples.size()) * width);
  for (int i = 0; i < bins; ++i)
    h.density[i] = static_cast<double>(h.counts[i]) * scale;
  return h;
}

}  // namespace turretsim
