#include "turretsim/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace turretsim {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kStepTol = 1e-12;
constexpr double kLambdaTol = 1e-9;

}  // namespace

QpResult solve_qp(const QpProblem& qp, const Eigen::VectorXd& z0,
                  int max_iterations) {
  const int n = static_cast<int>(qp.H.rows());
  const int rows = static_cast<int>(qp.A.rows());
  if (qp.H.cols() != n || qp.f.size() != n)
    throw std::invalid_argument("solve_qp: inconsistent objective dimensions");
  if (rows > 0 && (qp.A.cols() != n || qp.b.size() != rows))
    throw std::invalid_argument("solve_qp: inconsistent constraint dimensions");
  if (z0.size() != n)
    throw std::invalid_argument("solve_qp: bad start dimension");
  if (rows > 0 && ((qp.A * z0 - qp.b).maxCoeff() > kFeasTol))
    throw std::invalid_argument("solve_qp: start point infeasible");

  Eigen::VectorXd z = z0;
  std::vector<int> working;

  QpResult result;
  for (int iter = 0; iter < max_iterations; ++iter) {
    result.iterations = iter + 1;
    const int nw = static_cast<int>(working.size());

    // Equality-constrained step via the KKT system.
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + nw, n + nw);
    kkt.topLeftCorner(n, n) = qp.H;
    for (int i = 0; i < nw; ++i) {
      kkt.block(n + i, 0, 1, n) = qp.A.row(working[i]);
      kkt.block(0, n + i, n, 1) = qp.A.row(working[i]).transpose();
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + nw);
    rhs.head(n) = -(qp.H * z + qp.f);
    const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
    const Eigen::VectorXd p = sol.head(n);
    const Eigen::VectorXd lambda = sol.tail(nw);

    const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
    if (p.cwiseAbs().maxCoeff() <= kStepTol * scale) {
      // Stationary on the working set; check multipliers.
      int drop = -1;
      double most_negative = -kLambdaTol;
      for (int i = 0; i < nw; ++i) {
        if (lambda(i) < most_negative) {
          most_negative = lambda(i);
          drop = i;
        }
      }
      if (drop < 0) {
        result.z = z;
        result.converged = true;
        result.active = working;
        return result;
      }
      working.erase(working.begin() + drop);
      continue;
    }

    // Step to the nearest blocking constraint.
    double alpha = 1.0;
    int blocking = -1;
    for (int i = 0; i < rows; ++i) {
      if (std::find(working.begin(), working.end(), i) != working.end())
        continue;
      const double ap = qp.A.row(i).dot(p);
      if (ap <= kStepTol) continue;
      const double gap = qp.b(i) - qp.A.row(i).dot(z);
      const double limit = std::max(0.0, gap) / ap;
      if (limit < alpha) {
        alpha = limit;
        blocking = i;
      }
    }
    z += alpha * p;
    if (blocking >= 0) working.push_back(blocking);
  }

  result.z = z;
  result.converged = false;
  result.active = working;
  return result;
}

}  // namespace turretsim
