#pragma once

#include <optional>
#include <span>
#include <vector>

namespace turretsim {

// Population statistics: mu = (1/N) sum x, sigma = sqrt((1/N) sum (x-mu)^2),
// c_v = sigma/|mu| (undefined when mu = 0).
struct ErrorStats {
  double mu = 0.0;
  double sigma = 0.0;
  std::optional<double> cv;
  std::size_t n = 0;
};

ErrorStats error_stats(std::span<const double> samples);

struct Proportionality {
  double mu_ratio_abs = 0.0;  // |mu / mu_ref|
  double sigma_ratio = 0.0;   // sigma / sigma_ref
};

// Throws std::invalid_argument when a reference statistic is zero.
Proportionality proportionality_constants(const ErrorStats& err,
                                          const ErrorStats& ref);

double normal_cdf(double x);  // standard normal
double normal_pdf(double x, double mu, double sigma);

// Kolmogorov-Smirnov statistic of the samples against N(mu, sigma^2).
double ks_statistic_vs_normal(std::span<const double> samples, double mu,
                              double sigma);

// Large-sample KS critical value at significance alpha.
double ks_critical_value(std::size_t n, double alpha);

struct Histogram {
  std::vector<double> edges;    // n_bins + 1
  std::vector<std::size_t> counts;
  std::vector<double> density;  // counts / (N * bin_width)
};

Histogram histogram(std::span<const double> samples, int bins);

}  // namespace turretsim
