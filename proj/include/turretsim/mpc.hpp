#pragma once

#include <Eigen/Dense>

#include "turretsim/kernels/mpc_trials.hpp"
#include "turretsim/qp.hpp"
#include "turretsim/simulate.hpp"
#include "turretsim/state_space.hpp"

namespace turretsim {

// Receding-horizon tuning: horizons, per-channel weights, scaling factors,
// soft output bounds with equal-concern-for-relaxation vectors and the slack
// penalty. Input magnitude/increment bounds are deliberately absent (left
// unconstrained).
struct MpcConfig {
  int prediction_horizon = 100;
  int control_horizon = 4;
  double sample_time = 0.01;
  Eigen::Vector2d w_y{1.0e2, 7.5e1};
  Eigen::Vector2d w_u{0.0, 0.0};
  Eigen::Vector2d w_du{1.4e-4, 1.4e-4};
  Eigen::Vector2d s_y{1.0, 1.0};
  Eigen::Vector2d s_u{1.0, 1.0};
  Eigen::Vector2d y_min{0.0, 0.0};
  Eigen::Vector2d y_max{6.3, 3.1};
  Eigen::Vector2d v_y_min{1.0, 1.0};
  Eigen::Vector2d v_y_max{1.0, 1.0};
  double rho_eps = 1.0e5;

  void validate() const;
};

// Stacked affine prediction of the outputs over the horizon:
//   y_stack = Sx x + Su v,
// where v holds the m free moves (later moves held constant) and y_stack is
// ordered step-major, outputs within a step.
struct PredictionModel {
  Eigen::MatrixXd sx;
  Eigen::MatrixXd su;
  int p = 0;
  int m = 0;
  int ny = 0;
  int nu = 0;
};

PredictionModel build_prediction(const StateSpace& dss, int p, int m);

struct MpcState {
  Eigen::VectorXd x_hat;   // a-priori model state estimate
  Eigen::Vector2d u_prev;  // previously applied input
};

// Quadratic program for one control interval; decision vector
// z = [v_1 .. v_m, eps].
QpProblem build_qp(const PredictionModel& pred, const MpcState& state,
                   const Eigen::MatrixXd& ref_horizon, const MpcConfig& cfg);

struct MpcStepInfo {
  Eigen::VectorXd z;
  double eps = 0.0;
  int active_constraints = 0;
  bool converged = true;
};

// The full constrained controller: current-estimator observer (poles at 0.5
// per axis) plus the active-set QP each interval. This is the reference
// implementation; the Monte Carlo batches use the precomputed-gain fast path
// in kernels and fall back to this class when a bound activates.
class MpcController {
 public:
  MpcController(const StateSpace& model_discrete, const MpcConfig& cfg);

  // One interval: correct the estimate with the measurement, solve the QP,
  // apply and store the first move.
  Eigen::Vector2d step(const Eigen::Vector2d& measurement,
                       const Eigen::MatrixXd& ref_horizon);
  Eigen::Vector2d step(const Eigen::Vector2d& measurement,
                       const Eigen::Vector2d& ref_constant);

  void reset();
  const MpcState& state() const { return state_; }
  const PredictionModel& prediction() const { return pred_; }
  const MpcStepInfo& last_step() const { return last_; }
  const Eigen::MatrixXd& observer_gain() const { return m_gain_; }

 private:
  StateSpace model_;
  MpcConfig cfg_;
  PredictionModel pred_;
  Eigen::MatrixXd m_gain_;  // 4x2 current-estimator correction
  MpcState state_;
  MpcStepInfo last_;
};

// Closed loop of the controller against a (possibly perturbed) plant for a
// constant step reference; outputs are the two plant angles.
SimulationResult mpc_closed_loop(const StateSpace& plant_discrete,
                                 MpcController& controller,
                                 const Eigen::Vector2d& ref, double duration_s);

// Reduce one decoupled axis of the unconstrained receding-horizon law to the
// kernel plan: first-move gains, observer gains and the predicted-output
// feasibility map. `axis` selects states {0,1} (azimuth) or {2,3} (elevation)
// of the 4-state model/plant.
kernels::MpcAxisPlan make_axis_plan(const StateSpace& model_discrete,
                                    const StateSpace& plant_discrete, int axis,
                                    const MpcConfig& cfg);

// Observer gain placing both current-estimator poles of a 2-state SISO axis
// at `pole` (Ackermann).
Eigen::Vector2d axis_observer_gain(const Eigen::Matrix2d& ad,
                                   const Eigen::RowVector2d& c, double pole);

}  // namespace turretsim
