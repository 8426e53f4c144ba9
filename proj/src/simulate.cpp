#include "turretsim/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace turretsim {

namespace {

Eigen::VectorXd initial_state(const Eigen::VectorXd& x0, int n) {
  if (x0.size() == 0) return Eigen::VectorXd::Zero(n);
  if (x0.size() != n)
    throw std::invalid_argument("simulate: initial state dimension mismatch");
  return x0;
}

}  // namespace

SimulationResult simulate(const StateSpace& dsys, const Eigen::MatrixXd& inputs,
                          const Eigen::VectorXd& x0, bool keep_states) {
  dsys.check_dimensions();
  if (dsys.domain != TimeDomain::kDiscrete)
    throw std::invalid_argument("simulate: discrete system required");
  if (inputs.rows() != dsys.num_inputs())
    throw std::invalid_argument("simulate: input channel count mismatch");

  const int n = dsys.num_states();
  const int p = dsys.num_outputs();
  const auto steps = inputs.cols();

  Eigen::VectorXd x = initial_state(x0, n);
  SimulationResult result;
  result.times.resize(steps);
  result.outputs.assign(p, std::vector<double>(steps));
  if (keep_states) result.states.reserve(steps);

  for (Eigen::Index k = 0; k < steps; ++k) {
    result.times[k] = static_cast<double>(k) * dsys.sample_time;
    const Eigen::VectorXd y = dsys.C * x + dsys.D * inputs.col(k);
    for (int i = 0; i < p; ++i) result.outputs[i][k] = y(i);
    if (keep_states) result.states.push_back(x);
    x = dsys.A * x + dsys.B * inputs.col(k);
  }
  return result;
}

SimulationResult simulate_foh(const FohModel& sys, const Eigen::MatrixXd& inputs,
                              const Eigen::VectorXd& x0) {
  const int n = static_cast<int>(sys.Phi.rows());
  const int p = static_cast<int>(sys.C.rows());
  const auto steps = inputs.cols();
  if (inputs.rows() != sys.B0.cols())
    throw std::invalid_argument("simulate_foh: input channel count mismatch");

  Eigen::VectorXd x = initial_state(x0, n);
  SimulationResult result;
  result.times.resize(steps);
  result.outputs.assign(p, std::vector<double>(steps));

  for (Eigen::Index k = 0; k < steps; ++k) {
    result.times[k] = static_cast<double>(k) * sys.sample_time;
    const Eigen::VectorXd y = sys.C * x + sys.D * inputs.col(k);
    for (int i = 0; i < p; ++i) result.outputs[i][k] = y(i);
    if (k + 1 < steps)
      x = sys.Phi * x + sys.B0 * inputs.col(k) + sys.B1 * inputs.col(k + 1);
  }
  return result;
}

std::optional<double> settling_time(const std::vector<double>& times,
                                    const std::vector<double>& y, double final,
                                    double band) {
  if (times.size() != y.size() || y.empty())
    throw std::invalid_argument("settling_time: series size mismatch");
  const double tol = band * std::abs(final);
  // Scan backwards for the last sample outside the band.
  std::size_t k = y.size();
  while (k > 0 && std::abs(y[k - 1] - final) <= tol) --k;
  if (k == y.size()) return std::nullopt;  // never enters the band
  if (k == 0) return 0.0;
  return times[k];
}

}  // namespace turretsim
