#include "turretsim/discretize.hpp"

#include <stdexcept>

#include "turretsim/expm.hpp"

namespace turretsim {

StateSpace c2d_zoh(const StateSpace& ss, double h) {
  ss.check_dimensions();
  if (ss.domain != TimeDomain::kContinuous)
    throw std::invalid_argument("c2d_zoh: system already discrete");
  if (h <= 0.0) throw std::invalid_argument("c2d_zoh: step must be positive");

  const int n = ss.num_states();
  const int m = ss.num_inputs();
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + m, n + m);
  aug.topLeftCorner(n, n) = ss.A;
  aug.topRightCorner(n, m) = ss.B;
  const Eigen::MatrixXd e = expm(aug * h);

  StateSpace out;
  out.A = e.topLeftCorner(n, n);
  out.B = e.topRightCorner(n, m);
  out.C = ss.C;
  out.D = ss.D;
  out.domain = TimeDomain::kDiscrete;
  out.sample_time = h;
  return out;
}

FohModel c2d_foh(const StateSpace& ss, double h) {
  ss.check_dimensions();
  if (ss.domain != TimeDomain::kContinuous)
    throw std::invalid_argument("c2d_foh: system already discrete");
  if (h <= 0.0) throw std::invalid_argument("c2d_foh: step must be positive");

  // exp of [[A B 0],[0 0 I],[0 0 0]] h yields Phi, G1 = int exp(A t) dt B and
  // G2 = int exp(A t)(h - t) dt B in the top block row.
  const int n = ss.num_states();
  const int m = ss.num_inputs();
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 2 * m, n + 2 * m);
  aug.topLeftCorner(n, n) = ss.A;
  aug.block(0, n, n, m) = ss.B;
  aug.block(n, n + m, m, m) = Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd e = expm(aug * h);

  FohModel out;
  out.Phi = e.topLeftCorner(n, n);
  const Eigen::MatrixXd g1 = e.block(0, n, n, m);
  const Eigen::MatrixXd g2 = e.block(0, n + m, n, m);
  out.B0 = g1 - g2 / h;
  out.B1 = g2 / h;
  out.C = ss.C;
  out.D = ss.D;
  out.sample_time = h;
  return out;
}

}  // namespace turretsim
