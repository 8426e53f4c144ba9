#include "turretsim/state_space.hpp"

#include <stdexcept>
#include <vector>

namespace turretsim {

void StateSpace::check_dimensions() const {
  const auto n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("state space: A not square");
  if (B.rows() != n) throw std::invalid_argument("state space: B row mismatch");
  if (C.cols() != n) throw std::invalid_argument("state space: C col mismatch");
  if (D.rows() != C.rows() || D.cols() != B.cols())
    throw std::invalid_argument("state space: D dimension mismatch");
  if (domain == TimeDomain::kDiscrete && sample_time <= 0.0)
    throw std::invalid_argument("state space: discrete system needs sample time");
}

StateSpace tf_to_ss(const TransferFunction& tf) {
  if (!tf.proper())
    throw std::invalid_argument("tf_to_ss: transfer function must be proper");
  const int n = tf.den.degree();
  if (n == 0) {
    StateSpace ss;
    ss.A = Eigen::MatrixXd::Zero(0, 0);
    ss.B = Eigen::MatrixXd::Zero(0, 1);
    ss.C = Eigen::MatrixXd::Zero(1, 0);
    ss.D = Eigen::MatrixXd::Constant(1, 1, tf.num.leading() / tf.den.leading());
    ss.domain = tf.domain;
    ss.sample_time = tf.sample_time;
    return ss;
  }

  // Normalize to monic denominator and pad the numerator to length n+1.
  const double lead = tf.den.leading();
  std::vector<double> den(n + 1), num(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) den[i] = tf.den.coeffs()[i] / lead;
  const auto& nc = tf.num.coeffs();
  const int offset = n + 1 - static_cast<int>(nc.size());
  for (std::size_t i = 0; i < nc.size(); ++i)
    num[offset + i] = nc[i] / lead;

  StateSpace ss;
  ss.A = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) ss.A(0, j) = -den[j + 1];
  for (int i = 1; i < n; ++i) ss.A(i, i - 1) = 1.0;
  ss.B = Eigen::MatrixXd::Zero(n, 1);
  ss.B(0, 0) = 1.0;
  ss.C = Eigen::MatrixXd::Zero(1, n);
  for (int j = 0; j < n; ++j) ss.C(0, j) = num[j + 1] - num[0] * den[j + 1];
  ss.D = Eigen::MatrixXd::Constant(1, 1, num[0]);
  ss.domain = tf.domain;
  ss.sample_time = tf.sample_time;
  return ss;
}

TransferFunction ss_to_tf(const StateSpace& ss, int input, int output) {
  ss.check_dimensions();
  if (input < 0 || input >= ss.num_inputs() || output < 0 ||
      output >= ss.num_outputs())
    throw std::invalid_argument("ss_to_tf: channel out of range");

  const int n = ss.num_states();
  const Eigen::VectorXd b = ss.B.col(input);
  const Eigen::RowVectorXd c = ss.C.row(output);
  const double d = ss.D(output, input);

  // Leverrier-Faddeev: den(s) = s^n + a1 s^(n-1) + ... + an,
  // C adj(sI - A) B = sum_k (C M_k B) s^(n-k).
  std::vector<double> den(n + 1, 0.0), strictly_proper(n, 0.0);
  den[0] = 1.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    strictly_proper[k - 1] = c * m * b;
    const Eigen::MatrixXd am = ss.A * m;
    den[k] = -am.trace() / static_cast<double>(k);
    m = am + den[k] * Eigen::MatrixXd::Identity(n, n);
  }

  std::vector<double> num(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) num[k] = d * den[k];
  for (int k = 0; k < n; ++k) num[k + 1] += strictly_proper[k];

  TransferFunction tf{Polynomial(std::move(num)), Polynomial(std::move(den)),
                      ss.domain, ss.sample_time};
  return tf;
}

}  // namespace turretsim
