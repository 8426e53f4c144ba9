#pragma once

#include <Eigen/Dense>

#include "turretsim/transfer_function.hpp"

namespace turretsim {

// State-space realization x' = Ax + Bu, y = Cx + Du (continuous) or
// x[k+1] = Ax[k] + Bu[k], y[k] = Cx[k] + Du[k] (discrete).
struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;
  TimeDomain domain = TimeDomain::kContinuous;
  double sample_time = 0.0;

  int num_states() const { return static_cast<int>(A.rows()); }
  int num_inputs() const { return static_cast<int>(B.cols()); }
  int num_outputs() const { return static_cast<int>(C.rows()); }

  // Throws std::invalid_argument on inconsistent dimensions.
  void check_dimensions() const;
};

// Controllable-canonical realization of a proper SISO transfer function.
StateSpace tf_to_ss(const TransferFunction& tf);

// Transfer function of one input/output channel via the Leverrier-Faddeev
// resolvent recursion.
TransferFunction ss_to_tf(const StateSpace& ss, int input = 0, int output = 0);

}  // namespace turretsim
