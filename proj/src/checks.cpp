#include "turretsim/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "turretsim/h2norm.hpp"
#include "turretsim/io.hpp"
#include "turretsim/units.hpp"

namespace turretsim {

namespace {

// Baseline study values reproduced by the acceptance gate.
constexpr double kRefJ1 = 7.99e4;
constexpr double kRefJ2 = 4.83e4;

struct RefRow {
  double k_p, t_d, t_i, gamma, f_gc_hz, pm_deg;
};
constexpr RefRow kLeadAzRow{2120360.0, 0.42, 0.0, 0.045, 1.78, 70.0};
constexpr RefRow kPileadAzRow{6507863.0, 0.32, 0.45, 0.020, 4.19, 70.7};
constexpr RefRow kPileadElRow{1387706.0, 0.45, 0.78, 0.030, 2.06, 70.3};

constexpr double kRefPidConstAz = 9.6e-4;
constexpr double kRefPidConstEl = 9.9e-4;
constexpr double kRefMpcConstAz = 2.2e-5;
constexpr double kRefMpcConstEl = 3.1e-7;

constexpr double kRefSigmaEAz = 0.01625;  // mils
constexpr double kRefSigmaEEl = 0.01519;  // mils
constexpr double kRefH2Az = 0.1149;
constexpr double kRefH2El = 0.1074;

constexpr double kRefRampErrMils = 5.03;

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

CheckResult rel_check(int criterion, const std::string& name, double got,
                      double expected, double rel_tol) {
  const double err = std::abs(got - expected) / std::abs(expected);
  return {criterion, name, err <= rel_tol,
          "got " + fmt(got) + ", expected " + fmt(expected) + " (rel err " +
              fmt(err) + ", tol " + fmt(rel_tol) + ")"};
}

CheckResult abs_check(int criterion, const std::string& name, double got,
                      double expected, double abs_tol) {
  const double err = std::abs(got - expected);
  return {criterion, name, err <= abs_tol,
          "got " + fmt(got) + ", expected " + fmt(expected) + " (abs err " +
              fmt(err) + ", tol " + fmt(abs_tol) + ")"};
}

CheckResult bound_check(int criterion, const std::string& name, double got,
                        double bound) {
  return {criterion, name, got <= bound,
          "got " + fmt(got) + ", bound " + fmt(bound)};
}

int time_index(const TrialSet& set, double t) {
  for (std::size_t i = 0; i < set.firing_times.size(); ++i)
    if (std::abs(set.firing_times[i] - t) < 1e-9) return static_cast<int>(i);
  return -1;
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string render_results(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  for (const auto& r : results)
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.criterion << " ["
        << r.name << "]: " << r.detail << "\n";
  return out.str();
}

std::vector<CheckResult> check_inertia_and_linearization(const RunConfig& cfg) {
  std::vector<CheckResult> results;
  const auto [j1, j2] = moments_of_inertia(cfg.turret);
  results.push_back(rel_check(1, "platform inertia", j1, kRefJ1, 0.005));
  results.push_back(rel_check(1, "barrel inertia", j2, kRefJ2, 0.005));

  // Central finite differences of the nonlinear dynamics at the equilibrium.
  const StateSpace lin = linearize(cfg.turret);
  const Eigen::Vector4d x0 = Eigen::Vector4d::Zero();
  const Eigen::Vector2d u0 = equilibrium_input(cfg.turret);
  double max_rel = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double delta = 1e-6;
    Eigen::Vector4d xp = x0, xm = x0;
    xp(j) += delta;
    xm(j) -= delta;
    const Eigen::Vector4d fd =
        (nonlinear_rhs(cfg.turret, xp, u0) - nonlinear_rhs(cfg.turret, xm, u0)) /
        (2.0 * delta);
    for (int i = 0; i < 4; ++i) {
      const double denom =
          std::max({1.0, std::abs(lin.A(i, j)), std::abs(fd(i))});
      max_rel = std::max(max_rel, std::abs(lin.A(i, j) - fd(i)) / denom);
    }
  }
  for (int j = 0; j < 2; ++j) {
    const double delta = 1e-6 * std::max(1.0, std::abs(u0(j)));
    Eigen::Vector2d up = u0, um = u0;
    up(j) += delta;
    um(j) -= delta;
    const Eigen::Vector4d fd =
        (nonlinear_rhs(cfg.turret, x0, up) - nonlinear_rhs(cfg.turret, x0, um)) /
        (2.0 * delta);
    for (int i = 0; i < 4; ++i) {
      const double denom =
          std::max({1.0, std::abs(lin.B(i, j)), std::abs(fd(i))});
      max_rel = std::max(max_rel, std::abs(lin.B(i, j) - fd(i)) / denom);
    }
  }
  results.push_back(
      bound_check(2, "jacobian vs finite differences", max_rel, 1e-6));
  return results;
}

std::vector<CheckResult> check_designs(const RunConfig& cfg) {
  std::vector<CheckResult> results;
  const auto [g1, g2] = axis_tfs(cfg.turret);
  const double two_pi = 2.0 * std::numbers::pi;

  // Lead synthesis against the baseline azimuth row.
  {
    const LeadController c =
        design_lead(g1, {kLeadAzRow.f_gc_hz * two_pi, 70.0});
    results.push_back(rel_check(3, "lead K_P", c.k_p, kLeadAzRow.k_p, 0.01));
    results.push_back(rel_check(3, "lead gamma", c.gamma, kLeadAzRow.gamma, 0.05));
    results.push_back(rel_check(3, "lead T_D", c.t_d, kLeadAzRow.t_d, 0.03));
    const MarginReport report = verify_design(lead_tf(c), g1);
    results.push_back(rel_check(3, "lead crossover", report.gain_crossover_hz,
                                kLeadAzRow.f_gc_hz, 0.02));
    results.push_back(abs_check(3, "lead phase margin",
                                report.phase_margin_deg, kLeadAzRow.pm_deg,
                                0.5));
  }

  // PI+lead synthesis against the baseline elevation row.
  {
    const PiLeadController c =
        design_pilead(g2, {kPileadElRow.f_gc_hz * two_pi, 70.0});
    results.push_back(rel_check(4, "pilead K_P", c.k_p, kPileadElRow.k_p, 0.01));
    results.push_back(
        rel_check(4, "pilead gamma", c.gamma, kPileadElRow.gamma, 0.05));
    results.push_back(rel_check(4, "pilead T_D", c.t_d, kPileadElRow.t_d, 0.03));
    results.push_back(rel_check(4, "pilead T_I", c.t_i, kPileadElRow.t_i, 0.03));
    const MarginReport report = verify_design(pilead_tf(c), g2);
    results.push_back(rel_check(4, "pilead crossover", report.gain_crossover_hz,
                                kPileadElRow.f_gc_hz, 0.02));
    results.push_back(abs_check(4, "pilead phase margin",
                                report.phase_margin_deg, kPileadElRow.pm_deg,
                                1.0));
  }

  // Published moving-target azimuth parameters verified as-is.
  {
    const PiLeadController c{kPileadAzRow.k_p, kPileadAzRow.t_d,
                             kPileadAzRow.t_i, kPileadAzRow.gamma};
    const MarginReport report = verify_design(pilead_tf(c), g1);
    results.push_back(rel_check(5, "tracking-row crossover",
                                report.gain_crossover_hz, kPileadAzRow.f_gc_hz,
                                0.02));
    results.push_back(abs_check(5, "tracking-row phase margin",
                                report.phase_margin_deg, kPileadAzRow.pm_deg,
                                0.5));
  }
  return results;
}

double pid_step_settling_time(const RunConfig& cfg, int axis, double horizon_s) {
  const auto ctrl = resolve_controllers(cfg);
  const auto [g1, g2] = axis_tfs(cfg.turret);
  const TransferFunction loop = axis == 0
                                    ? series(lead_tf(ctrl.lead_az), g1)
                                    : series(pilead_tf(ctrl.pilead_el), g2);
  const StateSpace dss =
      c2d_zoh(tf_to_ss(close_unity(loop).closed), cfg.sim_step);
  const int steps = static_cast<int>(std::llround(horizon_s / cfg.sim_step)) + 1;
  const SimulationResult sim = simulate(dss, Eigen::MatrixXd::Ones(1, steps));
  const auto ts = settling_time(sim.times, sim.outputs[0], 1.0);
  return ts ? *ts : std::numeric_limits<double>::infinity();
}

double mpc_step_settling_time(const RunConfig& cfg, int axis, double horizon_s) {
  const StateSpace model_d = c2d_zoh(linearize(cfg.turret), cfg.sim_step);
  MpcController controller(model_d, cfg.mpc);
  const Eigen::Vector2d ref = axis == 0 ? Eigen::Vector2d(1.0, 0.0)
                                        : Eigen::Vector2d(0.0, 1.0);
  const SimulationResult sim =
      mpc_closed_loop(model_d, controller, ref, horizon_s);
  const auto ts = settling_time(sim.times, sim.outputs[axis], 1.0);
  return ts ? *ts : std::numeric_limits<double>::infinity();
}

std::vector<CheckResult> check_pid_settling(const RunConfig& cfg) {
  std::vector<CheckResult> results;
  results.push_back(abs_check(6, "pid azimuth settling",
                              pid_step_settling_time(cfg, 0), 2.0, 0.05));
  results.push_back(abs_check(6, "pid elevation settling",
                              pid_step_settling_time(cfg, 1), 2.0, 0.05));
  return results;
}

std::vector<CheckResult> check_mpc_settling(const RunConfig& cfg) {
  std::vector<CheckResult> results;
  results.push_back(rel_check(7, "mpc azimuth settling",
                              mpc_step_settling_time(cfg, 0), 1.4, 0.15));
  results.push_back(rel_check(7, "mpc elevation settling",
                              mpc_step_settling_time(cfg, 1), 0.94, 0.15));
  return results;
}

std::vector<CheckResult> check_ramp_tracking(const Exp5Output& out) {
  std::vector<CheckResult> results;
  const Exp5Track* lead = nullptr;
  const Exp5Track* pilead_az = nullptr;
  const Exp5Track* pilead_el = nullptr;
  for (const auto& t : out.tracks) {
    if (t.controller_name == "lead" && t.axis == 0) lead = &t;
    if (t.controller_name == "pilead" && t.axis == 0) pilead_az = &t;
    if (t.controller_name == "pilead" && t.axis == 1) pilead_el = &t;
  }
  if (!lead || !pilead_az || !pilead_el)
    return {{8, "ramp tracks", false, "missing tracking runs"}};
  results.push_back(rel_check(8, "lead ramp error (simulated)",
                              lead->e_ss_mils, kRefRampErrMils, 0.01));
  results.push_back(rel_check(8, "lead ramp error (velocity-gain oracle)",
                              lead->oracle_mils, kRefRampErrMils, 0.01));
  results.push_back(bound_check(8, "pilead azimuth ramp error",
                                std::abs(pilead_az->e_ss_mils), 0.01));
  results.push_back(bound_check(8, "pilead elevation ramp error",
                                std::abs(pilead_el->e_ss_mils), 0.01));
  return results;
}

std::vector<CheckResult> check_exp1_stats(const Exp1Output& pid,
                                          const Exp1Output& mpc) {
  std::vector<CheckResult> results;
  const TrialSet& pid_nominal = pid.cases.at(0);
  const int ti2 = time_index(pid_nominal, 2.0);
  if (ti2 < 0)
    return {{9, "experiment 1", false, "firing time 2 s was not simulated"}};

  // Criterion 9: nominal PID statistics at t_f = 2 s.
  const ErrorStats az = pid_nominal.stats(0, ti2);
  const ErrorStats el = pid_nominal.stats(1, ti2);
  results.push_back(abs_check(9, "pid nominal azimuth mean", az.mu, -1.2, 0.03));
  results.push_back(
      abs_check(9, "pid nominal azimuth sigma", az.sigma, 0.58, 0.02));
  results.push_back(
      abs_check(9, "pid nominal elevation mean", el.mu, -0.31, 0.01));

  // Criterion 10: proportionality constants and exact PID linearity.
  const auto pid_az =
      proportionality_constants(az, pid_nominal.ref_stats(0));
  const auto pid_el =
      proportionality_constants(el, pid_nominal.ref_stats(1));
  results.push_back(rel_check(10, "pid azimuth constant", pid_az.mu_ratio_abs,
                              kRefPidConstAz, 0.02));
  results.push_back(rel_check(10, "pid elevation constant", pid_el.mu_ratio_abs,
                              kRefPidConstEl, 0.02));
  for (const auto& set : pid.cases) {
    for (int axis = 0; axis < 2; ++axis) {
      const auto ratios =
          proportionality_constants(set.stats(axis, ti2), set.ref_stats(axis));
      results.push_back(bound_check(
          10,
          std::string("pid linearity |mu ratio - sigma ratio| (") +
              case_label(set.kase) + ", " + axis_label(axis) + ")",
          std::abs(ratios.mu_ratio_abs - ratios.sigma_ratio), 1e-12));
    }
  }
  const TrialSet& mpc_nominal = mpc.cases.at(0);
  const int mti2 = time_index(mpc_nominal, 2.0);
  const auto mpc_az =
      proportionality_constants(mpc_nominal.stats(0, mti2),
                                mpc_nominal.ref_stats(0));
  const auto mpc_el =
      proportionality_constants(mpc_nominal.stats(1, mti2),
                                mpc_nominal.ref_stats(1));
  auto factor_check = [&](const std::string& name, double got, double expected) {
    const double ratio = got / expected;
    results.push_back({10, name, ratio <= 3.0 && ratio >= 1.0 / 3.0,
                       "got " + fmt(got) + ", expected " + fmt(expected) +
                           " within a factor of 3 (ratio " + fmt(ratio) + ")"});
  };
  factor_check("mpc azimuth constant", mpc_az.mu_ratio_abs, kRefMpcConstAz);
  factor_check("mpc elevation constant", mpc_el.mu_ratio_abs, kRefMpcConstEl);
  results.push_back({10, "mpc << pid ordering",
                     mpc_az.mu_ratio_abs < pid_az.mu_ratio_abs &&
                         mpc_el.mu_ratio_abs < pid_el.mu_ratio_abs,
                     "mpc az " + fmt(mpc_az.mu_ratio_abs) + " vs pid az " +
                         fmt(pid_az.mu_ratio_abs) + "; mpc el " +
                         fmt(mpc_el.mu_ratio_abs) + " vs pid el " +
                         fmt(pid_el.mu_ratio_abs)});

  // Criterion 11: coefficient of variation for PID cases at t_f <= 4 s.
  for (const auto& set : pid.cases) {
    for (std::size_t ti = 0; ti < set.firing_times.size(); ++ti) {
      if (set.firing_times[ti] > 4.0 + 1e-9) continue;
      for (int axis = 0; axis < 2; ++axis) {
        const ErrorStats s = set.stats(axis, static_cast<int>(ti));
        const double cv = s.cv.value_or(0.0);
        results.push_back(abs_check(
            11,
            std::string("pid cv (") + case_label(set.kase) + ", " +
                axis_label(axis) + ", t=" + fmt(set.firing_times[ti]) + ")",
            cv, 0.49, 0.01));
      }
    }
  }
  return results;
}

std::vector<CheckResult> check_exp2_stats(const Exp2Output& pid) {
  std::vector<CheckResult> results;
  const TrialSet& set = pid.set;
  const int ti = time_index(set, 6.0);
  if (ti < 0)
    return {{12, "experiment 2", false, "firing time 6 s was not simulated"}};
  for (int axis = 0; axis < 2; ++axis) {
    const ErrorStats out = set.stats(axis, ti);
    const ErrorStats noise = error_stats(set.noise_mils[axis]);
    results.push_back(
        {12, std::string("output sigma in band (") + axis_label(axis) + ")",
         out.sigma >= 0.095 && out.sigma <= 0.115,
         "got " + fmt(out.sigma) + ", band [0.095, 0.115]"});
    const double bound = 3.0 * out.sigma / std::sqrt(static_cast<double>(out.n));
    results.push_back(bound_check(
        12, std::string("output mean tracks noise mean (") + axis_label(axis) +
                ")",
        std::abs(out.mu - noise.mu), bound));
  }
  return results;
}

std::vector<CheckResult> check_exp4_stats(const Exp4Output& out) {
  std::vector<CheckResult> results;
  const double ref_sigma[2] = {kRefSigmaEAz, kRefSigmaEEl};
  const double ref_h2[2] = {kRefH2Az, kRefH2El};
  for (int axis = 0; axis < 2; ++axis) {
    const Exp4Axis& a = out.axes[axis];
    results.push_back(rel_check(
        13, std::string("theoretical sigma_e (") + a.axis_name + ")",
        a.sigma_theory_mils, ref_sigma[axis], 0.02));
    results.push_back(rel_check(13, std::string("||H||_2 (") + a.axis_name + ")",
                                a.h2_theory, ref_h2[axis], 0.02));
    results.push_back(rel_check(
        13, std::string("monte carlo sigma vs theory (") + a.axis_name + ")",
        a.sigma_hat_mils, a.sigma_theory_mils, 0.02));
    results.push_back(rel_check(
        13, std::string("empirical ||H||_2 vs theory (") + a.axis_name + ")",
        a.h2_hat, a.h2_theory, 0.015));
    results.push_back(bound_check(
        13, std::string("KS statistic at 1% level (") + a.axis_name + ")",
        a.ks_stat, a.ks_critical_1pct));
  }
  return results;
}

std::vector<CheckResult> check_determinism(const RunConfig& cfg) {
  std::vector<CheckResult> results;

  RunConfig pid_cfg = cfg;
  pid_cfg.workers = 1;
  const std::string pid_a = exp1_csv(run_experiment1(pid_cfg, ControllerKind::kPid));
  pid_cfg.workers = 3;
  const std::string pid_b = exp1_csv(run_experiment1(pid_cfg, ControllerKind::kPid));
  results.push_back({14, "pid experiment 1 byte-identical across worker counts",
                     pid_a == pid_b,
                     pid_a == pid_b ? "identical CSV bytes" : "CSV bytes differ"});

  RunConfig mpc_cfg = cfg;
  mpc_cfg.trials = std::min(cfg.trials, 2000);
  mpc_cfg.workers = 1;
  const std::string mpc_a = exp1_csv(run_experiment1(mpc_cfg, ControllerKind::kMpc));
  mpc_cfg.workers = 3;
  const std::string mpc_b = exp1_csv(run_experiment1(mpc_cfg, ControllerKind::kMpc));
  results.push_back({14, "mpc experiment 1 byte-identical across worker counts",
                     mpc_a == mpc_b,
                     mpc_a == mpc_b ? "identical CSV bytes" : "CSV bytes differ"});
  return results;
}

}  // namespace turretsim
