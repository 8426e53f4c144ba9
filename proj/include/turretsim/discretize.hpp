#pragma once

#include "turretsim/state_space.hpp"

namespace turretsim {

// Zero-order-hold discretization: Ad = exp(A h), Bd = int_0^h exp(A t) dt B,
// computed from one augmented matrix exponential. C and D are unchanged.
StateSpace c2d_zoh(const StateSpace& ss, double h);

// First-order-hold discretization for piecewise-linear inputs:
//   x[k+1] = Phi x[k] + B0 u[k] + B1 u[k+1],
// exact at the sample instants when the input is linear on each interval.
struct FohModel {
  Eigen::MatrixXd Phi;
  Eigen::MatrixXd B0;
  Eigen::MatrixXd B1;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;
  double sample_time = 0.0;
};

FohModel c2d_foh(const StateSpace& ss, double h);

}  // namespace turretsim
