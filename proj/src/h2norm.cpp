#include "turretsim/h2norm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "turretsim/kernels/grid_mag.hpp"

namespace turretsim {

namespace {

constexpr double kPi = std::numbers::pi;

// Simpson integral of |H(e^{j theta})|^2 over theta in [0, pi] with
// `intervals` subdivisions (even).
double simpson_mag2(const TransferFunction& dtf, int intervals) {
  const int count = intervals + 1;
  std::vector<double> re(count), im(count), mag2(count);
  for (int i = 0; i < count; ++i) {
    const double theta = kPi * static_cast<double>(i) / intervals;
    re[i] = std::cos(theta);
    im[i] = std::sin(theta);
  }
  kernels::magnitude_squared_grid(
      dtf.num.coeffs().data(), static_cast<int>(dtf.num.coeffs().size()),
      dtf.den.coeffs().data(), static_cast<int>(dtf.den.coeffs().size()),
      re.data(), im.data(), mag2.data(), count);

  double odd = 0.0, even = 0.0;
  for (int i = 1; i < intervals; i += 2) odd += mag2[i];
  for (int i = 2; i < intervals; i += 2) even += mag2[i];
  const double step = kPi / intervals;
  return step / 3.0 * (mag2[0] + 4.0 * odd + 2.0 * even + mag2[intervals]);
}

}  // namespace

bool is_stable_discrete(const TransferFunction& dtf) {
  if (dtf.domain != TimeDomain::kDiscrete)
    throw std::invalid_argument("is_stable_discrete: discrete system required");
  const auto& den = dtf.den.coeffs();
  const int n = dtf.den.degree();
  if (n == 0) return true;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) companion(0, j) = -den[j + 1] / den[0];
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  const Eigen::VectorXcd roots = companion.eigenvalues();
  for (int i = 0; i < n; ++i)
    if (std::abs(roots(i)) >= 1.0) return false;
  return true;
}

double h2_norm_discrete(const TransferFunction& dtf) {
  if (dtf.domain != TimeDomain::kDiscrete)
    throw std::invalid_argument("h2_norm_discrete: discrete system required");
  if (!is_stable_discrete(dtf))
    throw std::invalid_argument("h2_norm_discrete: system is unstable");

  // |H| is even in theta, so the two-sided integral is twice the [0, pi] one:
  // ||H||^2 = Itheta / (pi * h).
  int intervals = 1 << 14;
  double prev = simpson_mag2(dtf, intervals);
  for (int refine = 0; refine < 6; ++refine) {
    intervals *= 2;
    const double cur = simpson_mag2(dtf, intervals);
    if (std::abs(cur - prev) <= 1e-6 * std::abs(cur))
      return std::sqrt(cur / (kPi * dtf.sample_time));
    prev = cur;
  }
  throw std::runtime_error("h2_norm_discrete: quadrature did not converge");
}

}  // namespace turretsim
