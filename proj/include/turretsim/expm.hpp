#pragma once

#include <Eigen/Dense>

namespace turretsim {

// Matrix exponential by scaling-and-squaring with a diagonal Pade(6,6)
// approximant. The argument is scaled so its infinity norm is at most 0.5
// before the Pade evaluation.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

}  // namespace turretsim
