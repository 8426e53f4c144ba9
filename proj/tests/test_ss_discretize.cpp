#include <doctest.h>

#include <cmath>

#include "turretsim/discretize.hpp"
#include "turretsim/expm.hpp"
#include "turretsim/simulate.hpp"
#include "turretsim/state_space.hpp"
#include "turretsim/turret.hpp"

using namespace turretsim;

namespace {

// Series reference for the matrix exponential oracle.
Eigen::MatrixXd expm_series(const Eigen::MatrixXd& a, int terms) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd term = sum;
  for (int k = 1; k <= terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

double max_freq_response_dev(const TransferFunction& a,
                             const TransferFunction& b) {
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double w = std::pow(10.0, -2.0 + 4.0 * i / 400.0);
    worst = std::max(worst, std::abs(freq_response(a, w) - freq_response(b, w)));
  }
  return worst;
}

}  // namespace

TEST_CASE("matrix exponential against closed forms") {
  // Rotation generator: expm([[0,-t],[t,0]]) = rotation by t.
  Eigen::MatrixXd rot(2, 2);
  const double t = 1.37;
  rot << 0.0, -t, t, 0.0;
  const Eigen::MatrixXd e = expm(rot);
  CHECK(e(0, 0) == doctest::Approx(std::cos(t)).epsilon(1e-14));
  CHECK(e(1, 0) == doctest::Approx(std::sin(t)).epsilon(1e-14));

  // Larger norm exercises the squaring stage; compare against the series.
  Eigen::MatrixXd m(3, 3);
  m << 0.4, 1.9, -0.3, -1.2, 0.1, 2.2, 0.7, -0.5, -1.1;
  m *= 3.0;
  const Eigen::MatrixXd diff = expm(m) - expm_series(m, 60);
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-11 * expm(m).cwiseAbs().maxCoeff());

  CHECK(expm(Eigen::MatrixXd::Zero(2, 2))
            .isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-15));
}

TEST_CASE("tf_to_ss canonical form of a first-order lag") {
  const auto tf =
      TransferFunction::continuous(Polynomial{1.0}, Polynomial{1.0, 1.0});
  const StateSpace ss = tf_to_ss(tf);
  CHECK(ss.A(0, 0) == doctest::Approx(-1.0));
  CHECK(ss.B(0, 0) == doctest::Approx(1.0));
  CHECK(ss.C(0, 0) == doctest::Approx(1.0));
  CHECK(ss.D(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("tf_to_ss rejects improper systems") {
  const auto improper =
      TransferFunction::continuous(Polynomial{1.0, 0.0, 0.0}, Polynomial{1.0, 1.0});
  CHECK_THROWS_AS((void)tf_to_ss(improper), std::invalid_argument);
}

TEST_CASE("tf -> ss -> tf round trip preserves the frequency response") {
  const auto [g1, g2] = axis_tfs(TurretParams{});
  const TransferFunction back = ss_to_tf(tf_to_ss(g2));
  // Relative deviation over four decades.
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double w = std::pow(10.0, -2.0 + 4.0 * i / 400.0);
    const auto a = freq_response(g2, w);
    const auto b = freq_response(back, w);
    worst = std::max(worst, std::abs(a - b) / std::abs(a));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("turret state space splits into the axis transfer functions") {
  const TurretParams params;
  const StateSpace lin = linearize(params);
  const auto [g1, g2] = axis_tfs(params);
  CHECK(max_freq_response_dev(ss_to_tf(lin, 0, 0), g1) < 1e-9);
  CHECK(max_freq_response_dev(ss_to_tf(lin, 1, 1), g2) < 1e-9);
  // Cross channels vanish.
  const TransferFunction cross = ss_to_tf(lin, 0, 1);
  CHECK(std::abs(freq_response(cross, 1.0)) < 1e-15);
}

TEST_CASE("zero-order hold of an integrator") {
  StateSpace ss;
  ss.A = Eigen::MatrixXd::Zero(1, 1);
  ss.B = Eigen::MatrixXd::Ones(1, 1);
  ss.C = Eigen::MatrixXd::Ones(1, 1);
  ss.D = Eigen::MatrixXd::Zero(1, 1);
  const StateSpace d = c2d_zoh(ss, 0.01);
  CHECK(d.A(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.B(0, 0) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(d.sample_time == 0.01);
}

TEST_CASE("zero-order hold velocity decay of the azimuth subsystem") {
  const TurretParams params;
  const StateSpace d = c2d_zoh(linearize(params), 0.01);
  const double c1 = derived_coeffs(params).c1;
  CHECK(d.A(1, 1) == doctest::Approx(std::exp(-c1 * 0.01)).epsilon(1e-12));
  CHECK(d.A(1, 1) == doctest::Approx(0.99252).epsilon(1e-5));
  // D passes through unchanged.
  CHECK(d.D.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("first-order hold reproduces a ramp through a double integrator") {
  // x1'' = u with u(t) = t: x1(t) = t^3/6 exactly.
  StateSpace ss;
  ss.A = Eigen::MatrixXd::Zero(2, 2);
  ss.A(0, 1) = 1.0;
  ss.B = Eigen::MatrixXd::Zero(2, 1);
  ss.B(1, 0) = 1.0;
  ss.C = Eigen::MatrixXd::Zero(1, 2);
  ss.C(0, 0) = 1.0;
  ss.D = Eigen::MatrixXd::Zero(1, 1);
  const double h = 0.05;
  const FohModel foh = c2d_foh(ss, h);
  const int steps = 41;
  Eigen::MatrixXd u(1, steps);
  for (int k = 0; k < steps; ++k) u(0, k) = k * h;
  const SimulationResult sim = simulate_foh(foh, u);
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    CHECK(sim.outputs[0][k] == doctest::Approx(t * t * t / 6.0).epsilon(1e-12));
  }
}
