#include "turretsim/expm.hpp"

#include <cmath>
#include <stdexcept>

namespace turretsim {

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: square matrix required");
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);

  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Eigen::MatrixXd scaled = a / std::ldexp(1.0, squarings);

  constexpr int q = 6;
  Eigen::MatrixXd power = scaled;
  double coeff = 0.5;
  Eigen::MatrixXd numer = identity + coeff * power;
  Eigen::MatrixXd denom = identity - coeff * power;
  int sign = 1;
  for (int k = 2; k <= q; ++k) {
    coeff *= static_cast<double>(q - k + 1) /
             static_cast<double>(k * (2 * q - k + 1));
    power = scaled * power;
    sign = -sign;
    numer += coeff * power;
    denom += (sign * coeff) * power;
  }

  Eigen::MatrixXd result = denom.partialPivLu().solve(numer);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace turretsim
