#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "turretsim/mpc.hpp"
#include "turretsim/pid_design.hpp"
#include "turretsim/turret.hpp"

namespace turretsim {

// A PID block is either a pair of design targets (the controller is
// synthesized against the configured plant) or explicit parameters with the
// published table's column names.
struct PidBlock {
  enum class Mode { kDesign, kExplicit };
  Mode mode = Mode::kDesign;
  // design mode
  double omega_gc = 0.0;  // rad/s
  double pm_deg = 70.0;
  // explicit mode
  double k_p = 0.0;
  double t_d = 0.0;
  double t_i = 0.0;  // ignored by lead controllers
  double gamma = 0.0;
};

struct RunConfig {
  TurretParams turret;

  PidBlock lead_azimuth;      // static-target azimuth controller
  PidBlock pilead_elevation;  // elevation controller
  PidBlock pilead_azimuth;    // moving-target azimuth controller

  MpcConfig mpc;

  int trials = 10000;
  std::vector<double> firing_times;  // seconds
  double sim_step = 0.01;            // closed-loop simulation increment
  double epsilon = 0.1;              // parameter-error fraction (exp 1)
  double noise_sigma_mils = 0.1;     // aimpoint noise (exp 2)
  double exp4_sigma_mils = 1.0;
  double exp4_sample_time = 0.02;
  double exp4_firing_time = 10.0;
  double exp4_tau = 2.0;             // aimpoint-dynamics time constant
  double ramp_speed_deg_s = 10.0;
  double ramp_duration_s = 20.0;
  std::uint64_t seed = 42;
  int workers = 0;  // 0 = hardware concurrency
  std::string out_dir = "out";
};

// Built-in defaults reproduce the published study: Table 1 turret, design
// targets that synthesize the published controller rows, Table 3 MPC tuning.
RunConfig default_config();

// Parse an INI-style config ([section], key = value, '#' comments). Throws
// std::runtime_error listing the diagnostics when the file is invalid.
RunConfig load_config(const std::string& path);

// Schema and invariant diagnostics without running anything; empty means ok.
std::vector<std::string> validate_config(const std::string& path);
std::vector<std::string> validate_config_values(const RunConfig& cfg);

// Serialize the effective configuration in the same INI format.
std::string config_to_ini(const RunConfig& cfg);

// Resolve the controller blocks against a plant.
LeadController resolve_lead(const PidBlock& block, const TransferFunction& plant);
PiLeadController resolve_pilead(const PidBlock& block,
                                const TransferFunction& plant);

}  // namespace turretsim
