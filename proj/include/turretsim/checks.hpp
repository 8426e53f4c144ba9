#pragma once

#include <string>
#include <vector>

#include "turretsim/experiments.hpp"

namespace turretsim {

// Self-check outcomes; every tolerance is pinned in checks.cpp against the
// baseline study values this project reproduces.
struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> check_inertia_and_linearization(const RunConfig& cfg);
std::vector<CheckResult> check_designs(const RunConfig& cfg);
std::vector<CheckResult> check_pid_settling(const RunConfig& cfg);
std::vector<CheckResult> check_mpc_settling(const RunConfig& cfg);
std::vector<CheckResult> check_ramp_tracking(const Exp5Output& out);
std::vector<CheckResult> check_exp1_stats(const Exp1Output& pid,
                                          const Exp1Output& mpc);
std::vector<CheckResult> check_exp2_stats(const Exp2Output& pid);
std::vector<CheckResult> check_exp4_stats(const Exp4Output& out);
std::vector<CheckResult> check_determinism(const RunConfig& cfg);

// Unit-step settling time helpers (0.1 % band).
double pid_step_settling_time(const RunConfig& cfg, int axis,
                              double horizon_s = 12.0);
double mpc_step_settling_time(const RunConfig& cfg, int axis,
                              double horizon_s = 3.0);

bool all_passed(const std::vector<CheckResult>& results);
std::string render_results(const std::vector<CheckResult>& results);

}  // namespace turretsim
