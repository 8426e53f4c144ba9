#pragma once

#include <optional>
#include <vector>

#include "turretsim/discretize.hpp"
#include "turretsim/state_space.hpp"

namespace turretsim {

// Fixed-step simulation output on the uniform grid t_k = k * sample_time.
struct SimulationResult {
  std::vector<double> times;
  std::vector<std::vector<double>> outputs;  // one series per output channel
  std::vector<Eigen::VectorXd> states;       // empty unless requested

  std::size_t size() const { return times.size(); }
};

// Simulate a discrete state-space system: x[k+1] = A x[k] + B u[k],
// y[k] = C x[k] + D u[k]. `inputs` is m x N (one column per step).
SimulationResult simulate(const StateSpace& dsys, const Eigen::MatrixXd& inputs,
                          const Eigen::VectorXd& x0 = Eigen::VectorXd(),
                          bool keep_states = false);

// Simulate a FOH model against sampled inputs (exact for piecewise-linear
// input between samples). `inputs` is m x N; the run covers N-1 steps and
// records N samples.
SimulationResult simulate_foh(const FohModel& sys, const Eigen::MatrixXd& inputs,
                              const Eigen::VectorXd& x0 = Eigen::VectorXd());

// Earliest time after which |y - final| <= band * |final| holds for every
// later sample. Returns nullopt when the response never settles within the
// simulated horizon.
std::optional<double> settling_time(const std::vector<double>& times,
                                    const std::vector<double>& y, double final,
                                    double band = 1e-3);

}  // namespace turretsim
