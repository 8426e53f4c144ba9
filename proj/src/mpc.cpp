#include "turretsim/mpc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace turretsim {

void MpcConfig::validate() const {
  if (control_horizon < 1 || control_horizon > prediction_horizon)
    throw std::invalid_argument("mpc config: need 1 <= m <= p");
  if (!(sample_time > 0.0))
    throw std::invalid_argument("mpc config: sample time must be positive");
  if ((w_y.array() < 0).any() || (w_u.array() < 0).any() ||
      (w_du.array() < 0).any())
    throw std::invalid_argument("mpc config: weights must be nonnegative");
  if ((s_y.array() <= 0).any() || (s_u.array() <= 0).any())
    throw std::invalid_argument("mpc config: scale factors must be positive");
  if ((v_y_min.array() < 0).any() || (v_y_max.array() < 0).any())
    throw std::invalid_argument("mpc config: ECR factors must be nonnegative");
  if (!(rho_eps > 0.0))
    throw std::invalid_argument("mpc config: slack penalty must be positive");
  if ((y_max.array() < y_min.array()).any())
    throw std::invalid_argument("mpc config: empty output bound interval");
}

PredictionModel build_prediction(const StateSpace& dss, int p, int m) {
  dss.check_dimensions();
  if (dss.domain != TimeDomain::kDiscrete)
    throw std::invalid_argument("build_prediction: discrete model required");
  if (m < 1 || m > p)
    throw std::invalid_argument("build_prediction: need 1 <= m <= p");

  const int n = dss.num_states();
  const int ny = dss.num_outputs();
  const int nu = dss.num_inputs();

  std::vector<Eigen::MatrixXd> powers(p + 1);
  powers[0] = Eigen::MatrixXd::Identity(n, n);
  for (int i = 1; i <= p; ++i) powers[i] = dss.A * powers[i - 1];

  PredictionModel pred;
  pred.p = p;
  pred.m = m;
  pred.ny = ny;
  pred.nu = nu;
  pred.sx = Eigen::MatrixXd::Zero(ny * p, n);
  pred.su = Eigen::MatrixXd::Zero(ny * p, nu * m);

  for (int i = 1; i <= p; ++i) {
    pred.sx.middleRows((i - 1) * ny, ny) = dss.C * powers[i];
    // Move l (0-based) applied at step l is blocked to v_min(l, m-1).
    for (int l = 0; l < i; ++l) {
      const int j = std::min(l, m - 1);
      pred.su.block((i - 1) * ny, j * nu, ny, nu) +=
          dss.C * powers[i - 1 - l] * dss.B;
    }
  }
  return pred;
}

namespace {

// Difference operator: delta_stack = D v - E u_prev, per input channel.
void build_difference(int m, int nu, Eigen::MatrixXd& d, Eigen::MatrixXd& e) {
  d = Eigen::MatrixXd::Identity(nu * m, nu * m);
  for (int j = 1; j < m; ++j)
    d.block(j * nu, (j - 1) * nu, nu, nu) = -Eigen::MatrixXd::Identity(nu, nu);
  e = Eigen::MatrixXd::Zero(nu * m, nu);
  e.topRows(nu) = Eigen::MatrixXd::Identity(nu, nu);
}

// Blocking map from free moves to the p applied inputs.
Eigen::MatrixXd build_blocking(int p, int m, int nu) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(nu * p, nu * m);
  for (int i = 0; i < p; ++i) {
    const int j = std::min(i, m - 1);
    t.block(i * nu, j * nu, nu, nu) = Eigen::MatrixXd::Identity(nu, nu);
  }
  return t;
}

}  // namespace

QpProblem build_qp(const PredictionModel& pred, const MpcState& state,
                   const Eigen::MatrixXd& ref_horizon, const MpcConfig& cfg) {
  cfg.validate();
  const int p = pred.p, m = pred.m, ny = pred.ny, nu = pred.nu;
  if (ref_horizon.rows() != ny || ref_horizon.cols() != p)
    throw std::invalid_argument("build_qp: reference must be ny x p");
  const int nv = nu * m;
  const int nz = nv + 1;

  // Row weights (w_y/s_y) repeated over the horizon.
  Eigen::VectorXd wy(ny * p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < ny; ++j) wy(i * ny + j) = cfg.w_y(j) / cfg.s_y(j);

  Eigen::MatrixXd d, e;
  build_difference(m, nu, d, e);
  Eigen::VectorXd wdu(nv);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < nu; ++j) wdu(i * nu + j) = cfg.w_du(j) / cfg.s_u(j);

  Eigen::VectorXd r_stack(ny * p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < ny; ++j) r_stack(i * ny + j) = ref_horizon(j, i);

  const Eigen::VectorXd y_free = pred.sx * state.x_hat;  // zero-move response
  const Eigen::MatrixXd wsu = wy.asDiagonal() * pred.su;
  const Eigen::MatrixXd wd = wdu.asDiagonal() * d;

  QpProblem qp;
  qp.H = Eigen::MatrixXd::Zero(nz, nz);
  qp.H.topLeftCorner(nv, nv) = wsu.transpose() * wsu + wd.transpose() * wd;
  qp.H(nv, nv) = cfg.rho_eps;

  // Optional input-magnitude weighting (zero in this study's tuning).
  if ((cfg.w_u.array() != 0.0).any()) {
    const Eigen::MatrixXd t = build_blocking(p, m, nu);
    Eigen::VectorXd wu(nu * p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < nu; ++j) wu(i * nu + j) = cfg.w_u(j) / cfg.s_u(j);
    const Eigen::MatrixXd wt = wu.asDiagonal() * t;
    qp.H.topLeftCorner(nv, nv) += wt.transpose() * wt;
  }
  qp.H *= 2.0;

  qp.f = Eigen::VectorXd::Zero(nz);
  qp.f.head(nv) = 2.0 * (wsu.transpose() * (wy.asDiagonal() * (y_free - r_stack)) -
                         wd.transpose() * (wdu.asDiagonal() * (e * state.u_prev)));

  // Soft output bounds (scaled) plus eps >= 0. Rows:
  //   y/s_y - V_max eps <= y_max/s_y   and  -y/s_y - V_min eps <= -y_min/s_y.
  const int nrows = 2 * ny * p + 1;
  qp.A = Eigen::MatrixXd::Zero(nrows, nz);
  qp.b = Eigen::VectorXd::Zero(nrows);
  int row = 0;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < ny; ++j) {
      const int yr = i * ny + j;
      const double inv_s = 1.0 / cfg.s_y(j);
      qp.A.block(row, 0, 1, nv) = inv_s * pred.su.row(yr);
      qp.A(row, nv) = -cfg.v_y_max(j);
      qp.b(row) = (cfg.y_max(j) - y_free(yr)) * inv_s;
      ++row;
      qp.A.block(row, 0, 1, nv) = -inv_s * pred.su.row(yr);
      qp.A(row, nv) = -cfg.v_y_min(j);
      qp.b(row) = (y_free(yr) - cfg.y_min(j)) * inv_s;
      ++row;
    }
  }
  qp.A(row, nv) = -1.0;  // eps >= 0
  qp.b(row) = 0.0;
  return qp;
}

Eigen::Vector2d axis_observer_gain(const Eigen::Matrix2d& ad,
                                   const Eigen::RowVector2d& c, double pole) {
  // Current-estimator error dynamics e+ = (ad - M c ad) e; Ackermann on the
  // pair (ad, c*ad) for a double pole.
  const Eigen::RowVector2d ch = c * ad;
  Eigen::Matrix2d obs;
  obs.row(0) = ch;
  obs.row(1) = ch * ad;
  const Eigen::Matrix2d phi =
      ad * ad - 2.0 * pole * ad + pole * pole * Eigen::Matrix2d::Identity();
  const Eigen::Vector2d rhs(0.0, 1.0);
  return phi * obs.inverse() * rhs;
}

MpcController::MpcController(const StateSpace& model_discrete,
                             const MpcConfig& cfg)
    : model_(model_discrete), cfg_(cfg) {
  cfg_.validate();
  model_.check_dimensions();
  if (model_.num_states() != 4 || model_.num_inputs() != 2 ||
      model_.num_outputs() != 2)
    throw std::invalid_argument("MpcController: expects the 4-state turret model");
  pred_ = build_prediction(model_, cfg_.prediction_horizon, cfg_.control_horizon);

  m_gain_ = Eigen::MatrixXd::Zero(4, 2);
  for (int axis = 0; axis < 2; ++axis) {
    const int base = 2 * axis;
    const Eigen::Matrix2d ad = model_.A.block<2, 2>(base, base);
    const Eigen::RowVector2d c(1.0, 0.0);
    m_gain_.block<2, 1>(base, axis) = axis_observer_gain(ad, c, 0.5);
  }
  reset();
}

void MpcController::reset() {
  state_.x_hat = Eigen::VectorXd::Zero(4);
  state_.u_prev = Eigen::Vector2d::Zero();
  last_ = MpcStepInfo{};
}

Eigen::Vector2d MpcController::step(const Eigen::Vector2d& measurement,
                                    const Eigen::Vector2d& ref_constant) {
  Eigen::MatrixXd ref(2, pred_.p);
  ref.colwise() = ref_constant;
  return step(measurement, ref);
}

Eigen::Vector2d MpcController::step(const Eigen::Vector2d& measurement,
                                    const Eigen::MatrixXd& ref_horizon) {
  // Correct the a-priori estimate with the current measurement.
  const Eigen::Vector2d innovation =
      measurement - model_.C * state_.x_hat;
  MpcState corrected = state_;
  corrected.x_hat = state_.x_hat + m_gain_ * innovation;

  const QpProblem qp = build_qp(pred_, corrected, ref_horizon, cfg_);
  const int nv = pred_.nu * pred_.m;

  // Unconstrained minimizer; feasible thanks to the slack when any output
  // bound is violated.
  Eigen::VectorXd z0 = -qp.H.ldlt().solve(qp.f);
  const Eigen::VectorXd residual = qp.A * z0 - qp.b;
  double worst = residual.maxCoeff();
  if (worst > 0.0) {
    double eps_needed = std::max(0.0, z0(nv));
    for (int i = 0; i < residual.size(); ++i) {
      if (residual(i) <= 0.0) continue;
      const double v_coeff = -qp.A(i, nv);  // ECR factor for this row
      if (v_coeff <= 0.0)
        throw std::runtime_error("mpc step: violated hard constraint");
      eps_needed = std::max(eps_needed, z0(nv) + residual(i) / v_coeff);
    }
    z0(nv) = eps_needed * (1.0 + 1e-9) + 1e-12;
  }

  const QpResult sol = solve_qp(qp, z0);
  last_.z = sol.z;
  last_.eps = sol.z(nv);
  last_.active_constraints = static_cast<int>(sol.active.size());
  last_.converged = sol.converged;

  const Eigen::Vector2d u = sol.z.head(2);
  state_.x_hat = model_.A * corrected.x_hat + model_.B * u;
  state_.u_prev = u;
  return u;
}

SimulationResult mpc_closed_loop(const StateSpace& plant_discrete,
                                 MpcController& controller,
                                 const Eigen::Vector2d& ref, double duration_s) {
  plant_discrete.check_dimensions();
  if (plant_discrete.domain != TimeDomain::kDiscrete)
    throw std::invalid_argument("mpc_closed_loop: discrete plant required");
  const double h = plant_discrete.sample_time;
  const int steps = static_cast<int>(std::llround(duration_s / h)) + 1;

  controller.reset();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(plant_discrete.num_states());
  SimulationResult result;
  result.times.resize(steps);
  result.outputs.assign(2, std::vector<double>(steps));

  for (int k = 0; k < steps; ++k) {
    result.times[k] = k * h;
    const Eigen::Vector2d y = plant_discrete.C * x;
    result.outputs[0][k] = y(0);
    result.outputs[1][k] = y(1);
    const Eigen::Vector2d u = controller.step(y, ref);
    x = plant_discrete.A * x + plant_discrete.B * u;
  }
  return result;
}

kernels::MpcAxisPlan make_axis_plan(const StateSpace& model_discrete,
                                    const StateSpace& plant_discrete, int axis,
                                    const MpcConfig& cfg) {
  cfg.validate();
  if (axis < 0 || axis > 1)
    throw std::invalid_argument("make_axis_plan: axis must be 0 or 1");
  const int base = 2 * axis;
  const int p = cfg.prediction_horizon;
  const int m = cfg.control_horizon;

  StateSpace ax;
  ax.A = model_discrete.A.block<2, 2>(base, base);
  ax.B = model_discrete.B.block<2, 1>(base, axis);
  ax.C = Eigen::MatrixXd::Zero(1, 2);
  ax.C(0, 0) = 1.0;
  ax.D = Eigen::MatrixXd::Zero(1, 1);
  ax.domain = TimeDomain::kDiscrete;
  ax.sample_time = model_discrete.sample_time;

  const PredictionModel pred = build_prediction(ax, p, m);

  const double q = cfg.w_y(axis) / cfg.s_y(axis);
  const double wd = cfg.w_du(axis) / cfg.s_u(axis);
  const double wu = cfg.w_u(axis) / cfg.s_u(axis);

  Eigen::MatrixXd d, e;
  build_difference(m, 1, d, e);
  Eigen::MatrixXd hm = q * q * pred.su.transpose() * pred.su +
                       wd * wd * d.transpose() * d;
  if (wu != 0.0) {
    const Eigen::MatrixXd t = build_blocking(p, m, 1);
    hm += wu * wu * t.transpose() * t;
  }

  // Optimal moves v = Kx x + Ku u_prev + Kr P for a constant reference P.
  Eigen::MatrixXd rhs(m, 4);
  rhs.leftCols(2) = -q * q * pred.su.transpose() * pred.sx;
  rhs.col(2) = wd * wd * d.transpose() * e;
  rhs.col(3) = q * q * pred.su.transpose() * Eigen::VectorXd::Ones(p);
  const Eigen::MatrixXd k = hm.ldlt().solve(rhs);

  kernels::MpcAxisPlan plan;
  Eigen::Map<Eigen::Matrix<double, 2, 2, Eigen::RowMajor>>(plan.adm) = ax.A;
  plan.bdm[0] = ax.B(0, 0);
  plan.bdm[1] = ax.B(1, 0);
  Eigen::Map<Eigen::Matrix<double, 2, 2, Eigen::RowMajor>>(plan.adp) =
      plant_discrete.A.block<2, 2>(base, base);
  plan.bdp[0] = plant_discrete.B(base, axis);
  plan.bdp[1] = plant_discrete.B(base + 1, axis);

  const Eigen::Vector2d mg =
      axis_observer_gain(ax.A, Eigen::RowVector2d(1.0, 0.0), 0.5);
  plan.m_obs[0] = mg(0);
  plan.m_obs[1] = mg(1);

  plan.kx[0] = k(0, 0);
  plan.kx[1] = k(0, 1);
  plan.ku = k(0, 2);
  plan.kr = k(0, 3);

  // Predicted outputs under the optimal moves as a map of [x, u_prev, P].
  const Eigen::MatrixXd g_x = pred.sx + pred.su * k.leftCols(2);
  const Eigen::VectorXd g_u = pred.su * k.col(2);
  const Eigen::VectorXd g_r = pred.su * k.col(3);
  plan.g.resize(p);
  for (int i = 0; i < p; ++i)
    plan.g[i] = {g_x(i, 0), g_x(i, 1), g_u(i), g_r(i)};

  plan.y_min = cfg.y_min(axis);
  plan.y_max = cfg.y_max(axis);
  plan.feas_tol = 1e-9 * std::max(1.0, std::abs(cfg.y_max(axis)));
  return plan;
}

}  // namespace turretsim
