#include <doctest.h>

#include <cmath>

#include "turretsim/simulate.hpp"
#include "turretsim/turret.hpp"

using namespace turretsim;

namespace {

StateSpace discrete_turret(double h) { return c2d_zoh(linearize(TurretParams{}), h); }

}  // namespace

TEST_CASE("zero input and zero state stay identically zero") {
  const StateSpace d = discrete_turret(0.01);
  const SimulationResult sim = simulate(d, Eigen::MatrixXd::Zero(2, 100));
  for (int axis = 0; axis < 2; ++axis)
    for (double y : sim.outputs[axis]) CHECK(y == 0.0);
}

TEST_CASE("linearity and superposition of the discrete simulation") {
  const StateSpace d = discrete_turret(0.01);
  const int steps = 300;
  Eigen::MatrixXd u1(2, steps), u2(2, steps);
  for (int k = 0; k < steps; ++k) {
    u1(0, k) = std::sin(0.05 * k) * 1e5;
    u1(1, k) = 1e5;
    u2(0, k) = 2e4;
    u2(1, k) = std::cos(0.02 * k) * 3e4;
  }
  const auto ya = simulate(d, u1);
  const auto yb = simulate(d, u2);
  const auto ysum = simulate(d, u1 + u2);
  const auto yscaled = simulate(d, 3.0 * u1);
  for (int axis = 0; axis < 2; ++axis) {
    for (int k = 0; k < steps; ++k) {
      CHECK(ysum.outputs[axis][k] ==
            doctest::Approx(ya.outputs[axis][k] + yb.outputs[axis][k])
                .epsilon(1e-12));
      CHECK(yscaled.outputs[axis][k] ==
            doctest::Approx(3.0 * ya.outputs[axis][k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("held-input discretization matches the analytic solution") {
  // Velocity subsystem v' = -c v + a u with constant u: closed form known.
  const TurretParams params;
  const auto co = derived_coeffs(params);
  StateSpace ss;
  ss.A = Eigen::MatrixXd::Constant(1, 1, -co.c1);
  ss.B = Eigen::MatrixXd::Constant(1, 1, co.a1);
  ss.C = Eigen::MatrixXd::Ones(1, 1);
  ss.D = Eigen::MatrixXd::Zero(1, 1);
  const double h = 0.01;
  const StateSpace d = c2d_zoh(ss, h);
  const double u0 = 1.0e5;
  const SimulationResult sim =
      simulate(d, Eigen::MatrixXd::Constant(1, 500, u0));
  for (int k = 0; k < 500; ++k) {
    const double t = k * h;
    const double exact = co.a1 * u0 / co.c1 * (1.0 - std::exp(-co.c1 * t));
    if (exact != 0.0)
      CHECK(std::abs(sim.outputs[0][k] - exact) / std::abs(exact) < 1e-9);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const StateSpace d = discrete_turret(0.01);
  CHECK_THROWS_AS((void)simulate(d, Eigen::MatrixXd::Zero(3, 10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)simulate(d, Eigen::MatrixXd::Zero(2, 10), Eigen::VectorXd::Zero(2)),
      std::invalid_argument);
}

TEST_CASE("settling time") {
  std::vector<double> times, flat;
  for (int k = 0; k <= 100; ++k) {
    times.push_back(0.1 * k);
    flat.push_back(5.0);
  }
  // Constant at the final value settles immediately.
  CHECK(settling_time(times, flat, 5.0).value() == 0.0);

  // Exponential approach: find the first sample inside the band.
  std::vector<double> expo;
  for (int k = 0; k <= 100; ++k) expo.push_back(1.0 - std::exp(-0.1 * 0.1 * k));
  std::vector<double> longer_times;
  std::vector<double> decay;
  for (int k = 0; k <= 2000; ++k) {
    longer_times.push_back(0.01 * k);
    decay.push_back(1.0 - std::exp(-0.5 * 0.01 * k));
  }
  const auto ts = settling_time(longer_times, decay, 1.0);
  REQUIRE(ts.has_value());
  // |1 - y| = exp(-0.5 t) <= 1e-3 at t = 2 ln(1000) = 13.8155.
  CHECK(*ts == doctest::Approx(13.82).epsilon(1e-2));

  // A response that never enters the band reports no settling.
  std::vector<double> stuck(times.size(), 4.0);
  CHECK(!settling_time(times, stuck, 5.0).has_value());
}
