#pragma once

#include <utility>

#include "turretsim/state_space.hpp"
#include "turretsim/transfer_function.hpp"

namespace turretsim {

// Physical constants of the two-body turret: a disk platform of radius R
// rotating in azimuth and a rod barrel of length L pivoting in elevation,
// with viscous bearing friction on both axes.
struct TurretParams {
  double platform_mass_kg = 8.67e3;     // m1
  double barrel_mass_kg = 4.97e3;       // m2
  double platform_damping = 6.00e4;     // b1, N*m/s
  double barrel_damping = 6.00e4;       // b2, N*m/s
  double platform_radius_m = 2.70;      // R
  double barrel_length_m = 5.40;        // L
  double gravity = 9.81;                // m/s^2

  void validate() const;  // throws std::invalid_argument on nonpositive values
};

struct DerivedCoeffs {
  double j1 = 0.0;  // platform moment of inertia, kg*m^2
  double j2 = 0.0;  // barrel moment of inertia, kg*m^2
  double a1 = 0.0;  // 1/J1
  double a2 = 0.0;  // 1/J2
  double c1 = 0.0;  // b1/J1, 1/s
  double c2 = 0.0;  // b2/J2, 1/s
};

// J2 = m2 L^2 / 3 (rod about its end), J1 = m1 R^2 / 2 + J2.
std::pair<double, double> moments_of_inertia(const TurretParams& p);

DerivedCoeffs derived_coeffs(const TurretParams& p);

// Elevation-dependent platform inertia m1 R^2/2 + J2 cos^2(alpha); used only
// to quantify the constant-J1 approximation error.
double inertia_at_elevation(const TurretParams& p, double alpha_rad);

// Right-hand side of the nonlinear equations of motion with state
// x = [theta, theta_dot, alpha, alpha_dot] and input u = [T1, T2].
Eigen::Vector4d nonlinear_rhs(const TurretParams& p, const Eigen::Vector4d& x,
                              const Eigen::Vector2d& u);

// Equilibrium hold torque u0 = [0, m2 g L / 2] at x0 = 0.
Eigen::Vector2d equilibrium_input(const TurretParams& p);

// Analytic Jacobian linearization about (x0, u0): the familiar block-diagonal
// double-integrator-with-damping pair, outputs [theta, alpha].
StateSpace linearize(const TurretParams& p);

// Decoupled axis transfer functions G1 = A1/(s(s+c1)), G2 = A2/(s(s+c2)).
std::pair<TransferFunction, TransferFunction> axis_tfs(const TurretParams& p);

enum class PerturbTarget { kDamping, kInertia };
enum class PerturbAxis { kAzimuth, kElevation, kBoth };

struct Perturbation {
  PerturbTarget target = PerturbTarget::kDamping;
  PerturbAxis axis = PerturbAxis::kBoth;
  double epsilon = 0.0;  // p_hat = p (1 + epsilon), epsilon > -1
};

// Scales the selected damping coefficient(s), or adjusts the masses so the
// selected moment(s) of inertia scale by (1 + epsilon) while everything else
// stays fixed. Controller parameters are never touched by this.
TurretParams apply_perturbation(const TurretParams& p, const Perturbation& pert);

}  // namespace turretsim
