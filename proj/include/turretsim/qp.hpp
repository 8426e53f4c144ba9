#pragma once

#include <Eigen/Dense>
#include <vector>

namespace turretsim {

// Dense convex QP  min 1/2 z'Hz + f'z  s.t.  A z <= b, with H positive
// definite. Sized for the receding-horizon problems here (<= 9 variables,
// a few hundred rows).
struct QpProblem {
  Eigen::MatrixXd H;
  Eigen::VectorXd f;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

struct QpResult {
  Eigen::VectorXd z;
  bool converged = false;
  int iterations = 0;
  std::vector<int> active;  // working set at termination
};

// Primal active-set method from a feasible starting point. When the
// iteration limit is hit the best iterate found is returned with
// converged = false.
QpResult solve_qp(const QpProblem& qp, const Eigen::VectorXd& z0,
                  int max_iterations = 200);

}  // namespace turretsim
