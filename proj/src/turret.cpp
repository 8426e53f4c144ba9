#include "turretsim/turret.hpp"

#include <cmath>
#include <stdexcept>

namespace turretsim {

void TurretParams::validate() const {
  const double values[] = {platform_mass_kg, barrel_mass_kg, platform_damping,
                           barrel_damping,   platform_radius_m,
                           barrel_length_m,  gravity};
  for (double v : values)
    if (!(v > 0.0))
      throw std::invalid_argument("turret parameters must be strictly positive");
}

std::pair<double, double> moments_of_inertia(const TurretParams& p) {
  const double j2 = p.barrel_mass_kg * p.barrel_length_m * p.barrel_length_m / 3.0;
  const double j1 =
      0.5 * p.platform_mass_kg * p.platform_radius_m * p.platform_radius_m + j2;
  return {j1, j2};
}

DerivedCoeffs derived_coeffs(const TurretParams& p) {
  const auto [j1, j2] = moments_of_inertia(p);
  DerivedCoeffs d;
  d.j1 = j1;
  d.j2 = j2;
  d.a1 = 1.0 / j1;
  d.a2 = 1.0 / j2;
  d.c1 = p.platform_damping / j1;
  d.c2 = p.barrel_damping / j2;
  return d;
}

double inertia_at_elevation(const TurretParams& p, double alpha_rad) {
  const auto [j1, j2] = moments_of_inertia(p);
  (void)j1;
  const double c = std::cos(alpha_rad);
  return 0.5 * p.platform_mass_kg * p.platform_radius_m * p.platform_radius_m +
         j2 * c * c;
}

Eigen::Vector4d nonlinear_rhs(const TurretParams& p, const Eigen::Vector4d& x,
                              const Eigen::Vector2d& u) {
  const auto d = derived_coeffs(p);
  const double gravity_torque =
      0.5 * p.barrel_mass_kg * p.gravity * p.barrel_length_m;
  Eigen::Vector4d dx;
  dx(0) = x(1);
  dx(1) = -d.c1 * x(1) + d.a1 * u(0);
  dx(2) = x(3);
  dx(3) = -d.c2 * x(3) - gravity_torque * d.a2 * std::cos(x(2)) + d.a2 * u(1);
  return dx;
}

Eigen::Vector2d equilibrium_input(const TurretParams& p) {
  return {0.0, 0.5 * p.barrel_mass_kg * p.gravity * p.barrel_length_m};
}

StateSpace linearize(const TurretParams& p) {
  const auto d = derived_coeffs(p);
  StateSpace ss;
  ss.A = Eigen::MatrixXd::Zero(4, 4);
  ss.A(0, 1) = 1.0;
  ss.A(1, 1) = -d.c1;
  ss.A(2, 3) = 1.0;
  // d f4 / d alpha = (m2 g L / 2 J2) sin(alpha0) = 0 at the equilibrium.
  ss.A(3, 3) = -d.c2;
  ss.B = Eigen::MatrixXd::Zero(4, 2);
  ss.B(1, 0) = d.a1;
  ss.B(3, 1) = d.a2;
  ss.C = Eigen::MatrixXd::Zero(2, 4);
  ss.C(0, 0) = 1.0;
  ss.C(1, 2) = 1.0;
  ss.D = Eigen::MatrixXd::Zero(2, 2);
  return ss;
}

std::pair<TransferFunction, TransferFunction> axis_tfs(const TurretParams& p) {
  const auto d = derived_coeffs(p);
  auto g1 = TransferFunction::continuous(Polynomial{d.a1},
                                         Polynomial{1.0, d.c1, 0.0});
  auto g2 = TransferFunction::continuous(Polynomial{d.a2},
                                         Polynomial{1.0, d.c2, 0.0});
  return {std::move(g1), std::move(g2)};
}

TurretParams apply_perturbation(const TurretParams& p, const Perturbation& pert) {
  if (pert.epsilon <= -1.0)
    throw std::invalid_argument("perturbation epsilon must exceed -1");
  const bool az = pert.axis != PerturbAxis::kElevation;
  const bool el = pert.axis != PerturbAxis::kAzimuth;
  TurretParams out = p;
  const double f = 1.0 + pert.epsilon;

  if (pert.target == PerturbTarget::kDamping) {
    if (az) out.platform_damping *= f;
    if (el) out.barrel_damping *= f;
    return out;
  }

  // Inertia: solve for masses that realize the scaled target inertias so the
  // other axis is untouched.
  const auto [j1, j2] = moments_of_inertia(p);
  const double j2_new = el ? f * j2 : j2;
  const double j1_new = az ? f * j1 : j1;
  out.barrel_mass_kg = 3.0 * j2_new / (p.barrel_length_m * p.barrel_length_m);
  out.platform_mass_kg =
      2.0 * (j1_new - j2_new) / (p.platform_radius_m * p.platform_radius_m);
  return out;
}

}  // namespace turretsim
