#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "turretsim/config.hpp"
#include "turretsim/mpc.hpp"
#include "turretsim/pid_design.hpp"
#include "turretsim/simulate.hpp"
#include "turretsim/stats.hpp"
#include "turretsim/target_grid.hpp"

namespace turretsim {

enum class ControllerKind { kPid, kMpc };
enum class CaseKind { kNominal, kDampingError, kInertiaError, kAimpointNoise };

const char* controller_label(ControllerKind kind);  // "pid" / "mpc"
const char* case_label(CaseKind kase);              // "N" / "DC" / "MI" / "noise"

// The static-target controllers resolved against the nominal plant. The
// experiment cases perturb only the simulated plant, never these.
struct ResolvedControllers {
  LeadController lead_az;
  PiLeadController pilead_el;
  PiLeadController pilead_az_tracking;
};

ResolvedControllers resolve_controllers(const RunConfig& cfg);

// One Monte Carlo batch: a controller and a plant case over all firing times.
// Errors are reference-minus-output in mils, laid out time-major:
// errors_mils[axis][time_index * trials + trial].
struct TrialSet {
  CaseKind kase = CaseKind::kNominal;
  std::vector<double> firing_times;
  int trials = 0;
  std::array<std::vector<double>, 2> errors_mils;
  std::array<std::vector<double>, 2> ref_mils;    // sampled aimpoints
  std::array<std::vector<double>, 2> noise_mils;  // empty unless noise case
  int mpc_fallback_trials = 0;  // trials recomputed by the full QP path

  ErrorStats stats(int axis, int time_index) const;
  ErrorStats ref_stats(int axis) const;
};

struct TrialRecord {
  Target target;
  std::vector<double> firing_times;
  std::array<std::vector<double>, 2> errors_mils;  // per axis, per firing time
};

// Simulate one controlled aiming trial from stationary start (public
// spot-check path; the batch engines below are the Monte Carlo path).
TrialRecord run_trial(const RunConfig& cfg, ControllerKind controller,
                      CaseKind kase, const Target& target,
                      const std::vector<double>& firing_times);

// Experiment 1: parameter-error sensitivity, cases {N, DC, MI}.
struct Exp1Output {
  ControllerKind controller = ControllerKind::kPid;
  std::vector<TrialSet> cases;
};

Exp1Output run_experiment1(const RunConfig& cfg, ControllerKind controller);

// Experiment 2: aimpoint measurement noise on the nominal plant.
struct Exp2Output {
  ControllerKind controller = ControllerKind::kPid;
  TrialSet set;
};

Exp2Output run_experiment2(const RunConfig& cfg, ControllerKind controller);

// Experiment 3: mean error vs firing time, assembled from experiments 1-2.
struct Exp3Curve {
  ControllerKind controller;
  CaseKind kase;
  int axis;  // 0 azimuth, 1 elevation
  std::vector<double> firing_times;
  std::vector<double> mu_mils;
  std::vector<double> sigma_mils;
};

struct Exp3Output {
  std::vector<Exp3Curve> curves;
};

Exp3Output run_experiment3(const RunConfig& cfg);
Exp3Output assemble_experiment3(const std::vector<Exp1Output>& exp1,
                                const std::vector<Exp2Output>& exp2);

// Experiment 4: analytic vs empirical white-noise error statistics.
struct Exp4Axis {
  std::string axis_name;
  TransferFunction error_system_d;  // discrete w -> e system
  double h2_theory = 0.0;
  double sigma_theory_mils = 0.0;
  double mu_hat_mils = 0.0;
  double sigma_hat_mils = 0.0;
  double h2_hat = 0.0;
  double ks_stat = 0.0;
  double ks_critical_1pct = 0.0;
  std::vector<double> errors_mils;  // per-trial samples at the firing time
};

struct Exp4Output {
  std::array<Exp4Axis, 2> axes;
  double sigma_w_mils = 0.0;
  double sample_time = 0.0;
  double firing_time = 0.0;
};

// Continuous aimpoint-noise error system H(s) = 1/((tau s + 1)(1 + C G)).
TransferFunction build_error_system(const TransferFunction& controller_tf,
                                    const TransferFunction& plant,
                                    double tau_s);

double theoretical_sigma_e(double h2_norm, double sigma_w, double sample_time);

Exp4Output run_experiment4(const RunConfig& cfg);

// Experiment 5: constant-rate moving target under the PID controllers.
struct Exp5Track {
  std::string controller_name;
  int axis;  // 0 azimuth, 1 elevation
  std::vector<double> times;
  std::vector<double> ref_mils;
  std::vector<double> output_mils;
  std::vector<double> error_mils;
  double e_ss_mils = 0.0;      // mean over the final 10 % of the run
  double oracle_mils = 0.0;    // V*b/K_P for lead control, 0 for PI+lead
};

struct Exp5Output {
  std::vector<Exp5Track> tracks;
};

Exp5Output run_experiment5(const RunConfig& cfg);

// PID unit-step error samples at the firing steps (closed loop, ZOH).
std::vector<double> pid_unit_step_errors(const TransferFunction& controller_tf,
                                         const TransferFunction& plant,
                                         const std::vector<int>& firing_steps,
                                         double h);

}  // namespace turretsim
