#include <doctest.h>

#include <cmath>

#include "turretsim/turret.hpp"
#include "turretsim/units.hpp"

using namespace turretsim;

TEST_CASE("moments of inertia from the body geometry") {
  const TurretParams p;
  const auto [j1, j2] = moments_of_inertia(p);
  CHECK(j2 == doctest::Approx(4.83e4).epsilon(2e-3));
  CHECK(j1 == doctest::Approx(7.99e4).epsilon(2e-3));

  TurretParams weightless = p;
  weightless.barrel_mass_kg = 1e-12;  // massless barrel limit
  const auto [j1b, j2b] = moments_of_inertia(weightless);
  CHECK(j2b == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(j1b == doctest::Approx(0.5 * p.platform_mass_kg *
                               p.platform_radius_m * p.platform_radius_m)
                   .epsilon(1e-9));
}

TEST_CASE("elevation-dependent inertia") {
  const TurretParams p;
  const auto [j1, j2] = moments_of_inertia(p);
  CHECK(inertia_at_elevation(p, 0.0) == doctest::Approx(j1).epsilon(1e-12));
  CHECK(inertia_at_elevation(p, radians_from_degrees(90.0)) ==
        doctest::Approx(3.16e4).epsilon(1e-3));
  // Constant-J1 approximation error at 30 deg elevation is about 18 %.
  const double j30 = inertia_at_elevation(p, radians_from_degrees(30.0));
  CHECK((j1 - j30) / j30 == doctest::Approx(0.178).epsilon(0.01));
}

TEST_CASE("nonlinear dynamics at the equilibrium") {
  const TurretParams p;
  const Eigen::Vector4d x0 = Eigen::Vector4d::Zero();
  const Eigen::Vector2d u0 = equilibrium_input(p);
  CHECK(u0(1) == doctest::Approx(1.3164e5).epsilon(1e-4));
  const Eigen::Vector4d dx = nonlinear_rhs(p, x0, u0);
  CHECK(dx.cwiseAbs().maxCoeff() < 1e-12);

  // First component is always the angular rate state.
  Eigen::Vector4d x;
  x << 0.3, -0.7, 0.1, 0.4;
  CHECK(nonlinear_rhs(p, x, u0)(0) == -0.7);
  CHECK(nonlinear_rhs(p, x, u0)(2) == 0.4);
}

TEST_CASE("analytic jacobian matches central finite differences") {
  const TurretParams p;
  const StateSpace lin = linearize(p);
  const Eigen::Vector2d u0 = equilibrium_input(p);
  const Eigen::Vector4d x0 = Eigen::Vector4d::Zero();

  double worst = 0.0;
  const double delta = 1e-6;
  for (int j = 0; j < 4; ++j) {
    Eigen::Vector4d xp = x0, xm = x0;
    xp(j) += delta;
    xm(j) -= delta;
    const Eigen::Vector4d fd =
        (nonlinear_rhs(p, xp, u0) - nonlinear_rhs(p, xm, u0)) / (2.0 * delta);
    for (int i = 0; i < 4; ++i) {
      const double denom = std::max({1.0, std::abs(lin.A(i, j)), std::abs(fd(i))});
      worst = std::max(worst, std::abs(lin.A(i, j) - fd(i)) / denom);
    }
  }
  CHECK(worst < 1e-6);
  // The gravity column vanishes at zero elevation.
  CHECK(lin.A(3, 2) == 0.0);
}

TEST_CASE("axis coefficient values") {
  const auto d = derived_coeffs(TurretParams{});
  CHECK(d.a1 == doctest::Approx(1.2516e-5).epsilon(2e-4));
  CHECK(d.c1 == doctest::Approx(0.7509).epsilon(2e-4));
  CHECK(d.a2 == doctest::Approx(2.0704e-5).epsilon(2e-4));
  CHECK(d.c2 == doctest::Approx(1.2422).epsilon(2e-4));

  // Velocity-gain identity: s G1(s) -> A1/c1 = 1/b1 as s -> 0.
  const auto [g1, g2] = axis_tfs(TurretParams{});
  const double dc_vel = std::abs(freq_response(g1, 1e-6)) * 1e-6;
  CHECK(dc_vel == doctest::Approx(1.0 / 6.0e4).epsilon(1e-6));
}

TEST_CASE("perturbations scale one parameter family at a time") {
  const TurretParams p;
  const auto [j1, j2] = moments_of_inertia(p);

  const TurretParams damped = apply_perturbation(
      p, {PerturbTarget::kDamping, PerturbAxis::kAzimuth, 0.1});
  CHECK(damped.platform_damping == doctest::Approx(6.6e4));
  CHECK(damped.barrel_damping == p.barrel_damping);
  const auto [j1d, j2d] = moments_of_inertia(damped);
  CHECK(j1d == doctest::Approx(j1).epsilon(1e-12));
  CHECK(j2d == doctest::Approx(j2).epsilon(1e-12));

  const TurretParams heavier = apply_perturbation(
      p, {PerturbTarget::kInertia, PerturbAxis::kBoth, 0.1});
  const auto [j1h, j2h] = moments_of_inertia(heavier);
  CHECK(j1h == doctest::Approx(1.1 * j1).epsilon(1e-12));
  CHECK(j2h == doctest::Approx(1.1 * j2).epsilon(1e-12));
  CHECK(heavier.platform_damping == p.platform_damping);

  // Elevation-only inertia change leaves the platform inertia alone.
  const TurretParams barrel_only = apply_perturbation(
      p, {PerturbTarget::kInertia, PerturbAxis::kElevation, 0.1});
  const auto [j1e, j2e] = moments_of_inertia(barrel_only);
  CHECK(j1e == doctest::Approx(j1).epsilon(1e-12));
  CHECK(j2e == doctest::Approx(1.1 * j2).epsilon(1e-12));

  // Identity perturbation.
  const TurretParams same =
      apply_perturbation(p, {PerturbTarget::kInertia, PerturbAxis::kBoth, 0.0});
  CHECK(same.platform_mass_kg == doctest::Approx(p.platform_mass_kg));

  CHECK_THROWS_AS(
      (void)apply_perturbation(
          p, {PerturbTarget::kDamping, PerturbAxis::kBoth, -1.0}),
      std::invalid_argument);
}
