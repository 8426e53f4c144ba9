#include "turretsim/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "turretsim/h2norm.hpp"
#include "turretsim/kernels/dispatch.hpp"
#include "turretsim/kernels/mpc_trials.hpp"
#include "turretsim/kernels/noise_filter.hpp"
#include "turretsim/units.hpp"

namespace turretsim {

namespace {

// Stream tags for substream derivation; fixed for reproducibility.
constexpr std::uint64_t kTagTarget = 0x7461726765ULL;
constexpr std::uint64_t kTagExp2Noise = 0x6e6f697365ULL;
constexpr std::uint64_t kTagExp4 = 0x65787034ULL;

constexpr int kBlockTrials = 256;

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Fixed-size blocks pulled from an atomic counter; the block decomposition
// (and hence every per-trial computation) is independent of worker count.
void parallel_blocks(int total, int workers,
                     const std::function<void(int, int)>& body) {
  const int nblocks = (total + kBlockTrials - 1) / kBlockTrials;
  workers = std::min(resolve_workers(workers), nblocks);
  if (workers <= 1) {
    for (int b = 0; b < nblocks; ++b)
      body(b * kBlockTrials, std::min(total, (b + 1) * kBlockTrials));
    return;
  }
  std::atomic<int> next{0};
  auto run = [&] {
    while (true) {
      const int b = next.fetch_add(1);
      if (b >= nblocks) break;
      body(b * kBlockTrials, std::min(total, (b + 1) * kBlockTrials));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int i = 0; i < workers; ++i) pool.emplace_back(run);
  for (auto& t : pool) t.join();
}

TurretParams plant_for_case(const RunConfig& cfg, CaseKind kase) {
  switch (kase) {
    case CaseKind::kDampingError:
      return apply_perturbation(
          cfg.turret,
          {PerturbTarget::kDamping, PerturbAxis::kBoth, cfg.epsilon});
    case CaseKind::kInertiaError:
      return apply_perturbation(
          cfg.turret,
          {PerturbTarget::kInertia, PerturbAxis::kBoth, cfg.epsilon});
    default:
      return cfg.turret;
  }
}

std::vector<int> firing_steps(const std::vector<double>& times, double h) {
  std::vector<int> steps;
  steps.reserve(times.size());
  int prev = -1;
  for (double t : times) {
    const int k = static_cast<int>(std::llround(t / h));
    if (k <= prev)
      throw std::invalid_argument("firing times must be increasing");
    if (std::abs(k * h - t) > 1e-9)
      throw std::invalid_argument("firing time not on the simulation grid");
    steps.push_back(k);
    prev = k;
  }
  return steps;
}

struct SampledTargets {
  std::vector<double> az_mils;
  std::vector<double> el_mils;
};

SampledTargets sample_all_targets(const RunConfig& cfg) {
  const TargetGrid grid = TargetGrid::paper_default();
  SampledTargets out;
  out.az_mils.resize(cfg.trials);
  out.el_mils.resize(cfg.trials);
  for (int t = 0; t < cfg.trials; ++t) {
    SplitMix64 rng(stream_seed(cfg.seed, kTagTarget, t));
    const Target target = sample_target(grid, rng);
    out.az_mils[t] = mils_from_degrees(target.azimuth_deg);
    out.el_mils[t] = mils_from_degrees(target.elevation_deg);
  }
  return out;
}

void draw_exp2_noise(const RunConfig& cfg, TrialSet& set) {
  for (int axis = 0; axis < 2; ++axis) set.noise_mils[axis].resize(cfg.trials);
  for (int t = 0; t < cfg.trials; ++t) {
    NormalSampler sampler(stream_seed(cfg.seed, kTagExp2Noise, t));
    // One draw per axis per trial: azimuth first, then elevation.
    set.noise_mils[0][t] = cfg.noise_sigma_mils * sampler.next();
    set.noise_mils[1][t] = cfg.noise_sigma_mils * sampler.next();
  }
}

TrialSet pid_trial_set(const RunConfig& cfg, CaseKind kase) {
  const auto ctrl = resolve_controllers(cfg);
  const TurretParams plant = plant_for_case(cfg, kase);
  const auto [g1, g2] = axis_tfs(plant);
  const auto steps = firing_steps(cfg.firing_times, cfg.sim_step);

  const std::vector<double> unit_err[2] = {
      pid_unit_step_errors(lead_tf(ctrl.lead_az), g1, steps, cfg.sim_step),
      pid_unit_step_errors(pilead_tf(ctrl.pilead_el), g2, steps, cfg.sim_step)};

  TrialSet set;
  set.kase = kase;
  set.firing_times = cfg.firing_times;
  set.trials = cfg.trials;
  const SampledTargets targets = sample_all_targets(cfg);
  set.ref_mils[0] = targets.az_mils;
  set.ref_mils[1] = targets.el_mils;
  if (kase == CaseKind::kAimpointNoise) draw_exp2_noise(cfg, set);

  const int nt = static_cast<int>(steps.size());
  for (int axis = 0; axis < 2; ++axis) {
    set.errors_mils[axis].resize(static_cast<std::size_t>(nt) * cfg.trials);
    for (int ti = 0; ti < nt; ++ti) {
      const double k = unit_err[axis][ti];
      double* out = set.errors_mils[axis].data() +
                    static_cast<std::size_t>(ti) * cfg.trials;
      const double* p = set.ref_mils[axis].data();
      if (kase == CaseKind::kAimpointNoise) {
        const double* w = set.noise_mils[axis].data();
        for (int t = 0; t < cfg.trials; ++t) out[t] = k * p[t] + w[t];
      } else {
        for (int t = 0; t < cfg.trials; ++t) out[t] = k * p[t];
      }
    }
  }
  return set;
}

TrialSet mpc_trial_set(const RunConfig& cfg, CaseKind kase) {
  if (std::abs(cfg.mpc.sample_time - cfg.sim_step) > 1e-12)
    throw std::invalid_argument(
        "mpc trials: controller sample time must equal the simulation step");

  const TurretParams plant = plant_for_case(cfg, kase);
  const StateSpace model_d = c2d_zoh(linearize(cfg.turret), cfg.sim_step);
  const StateSpace plant_d = c2d_zoh(linearize(plant), cfg.sim_step);
  const auto steps = firing_steps(cfg.firing_times, cfg.sim_step);
  const int nt = static_cast<int>(steps.size());
  const int total_steps = steps.back() + 1;

  TrialSet set;
  set.kase = kase;
  set.firing_times = cfg.firing_times;
  set.trials = cfg.trials;
  const SampledTargets targets = sample_all_targets(cfg);
  set.ref_mils[0] = targets.az_mils;
  set.ref_mils[1] = targets.el_mils;
  if (kase == CaseKind::kAimpointNoise) draw_exp2_noise(cfg, set);

  // Amplitudes in radians for the simulation.
  std::array<std::vector<double>, 2> amp_rad;
  for (int axis = 0; axis < 2; ++axis) {
    amp_rad[axis].resize(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t)
      amp_rad[axis][t] = radians_from_mils(set.ref_mils[axis][t]);
  }

  std::array<std::vector<double>, 2> err_rad;
  std::array<std::vector<unsigned char>, 2> flags;
  for (int axis = 0; axis < 2; ++axis) {
    err_rad[axis].assign(static_cast<std::size_t>(nt) * cfg.trials, 0.0);
    flags[axis].assign(cfg.trials, 0);
    const kernels::MpcAxisPlan plan =
        make_axis_plan(model_d, plant_d, axis, cfg.mpc);
    parallel_blocks(cfg.trials, cfg.workers, [&](int begin, int end) {
      kernels::mpc_axis_trials(plan, amp_rad[axis].data(), cfg.trials, begin,
                               end, steps.data(), nt, total_steps,
                               err_rad[axis].data(), flags[axis].data());
    });
  }

  // Any trial whose unconstrained fast path would cross a soft bound is
  // recomputed with the full active-set controller (both axes together).
  MpcController controller(model_d, cfg.mpc);
  for (int t = 0; t < cfg.trials; ++t) {
    if (!(flags[0][t] || flags[1][t])) continue;
    ++set.mpc_fallback_trials;
    controller.reset();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
    const Eigen::Vector2d ref(amp_rad[0][t], amp_rad[1][t]);
    int next_f = 0;
    for (int k = 0; k < total_steps && next_f < nt; ++k) {
      const Eigen::Vector2d y = plant_d.C * x;
      if (k == steps[next_f]) {
        err_rad[0][static_cast<std::size_t>(next_f) * cfg.trials + t] =
            ref(0) - y(0);
        err_rad[1][static_cast<std::size_t>(next_f) * cfg.trials + t] =
            ref(1) - y(1);
        ++next_f;
      }
      const Eigen::Vector2d u = controller.step(y, ref);
      x = plant_d.A * x + plant_d.B * u;
    }
  }

  for (int axis = 0; axis < 2; ++axis) {
    set.errors_mils[axis].resize(err_rad[axis].size());
    const bool noisy = kase == CaseKind::kAimpointNoise;
    for (int ti = 0; ti < nt; ++ti) {
      const std::size_t base = static_cast<std::size_t>(ti) * cfg.trials;
      for (int t = 0; t < cfg.trials; ++t) {
        double e = mils_from_radians(err_rad[axis][base + t]);
        if (noisy) e += set.noise_mils[axis][t];
        set.errors_mils[axis][base + t] = e;
      }
    }
  }
  return set;
}

}  // namespace

const char* controller_label(ControllerKind kind) {
  return kind == ControllerKind::kPid ? "pid" : "mpc";
}

const char* case_label(CaseKind kase) {
  switch (kase) {
    case CaseKind::kNominal:
      return "N";
    case CaseKind::kDampingError:
      return "DC";
    case CaseKind::kInertiaError:
      return "MI";
    case CaseKind::kAimpointNoise:
      return "noise";
  }
  return "?";
}

ResolvedControllers resolve_controllers(const RunConfig& cfg) {
  const auto [g1, g2] = axis_tfs(cfg.turret);
  ResolvedControllers out;
  out.lead_az = resolve_lead(cfg.lead_azimuth, g1);
  out.pilead_el = resolve_pilead(cfg.pilead_elevation, g2);
  out.pilead_az_tracking = resolve_pilead(cfg.pilead_azimuth, g1);
  return out;
}

ErrorStats TrialSet::stats(int axis, int time_index) const {
  const std::size_t base = static_cast<std::size_t>(time_index) * trials;
  return error_stats(
      std::span<const double>(errors_mils[axis].data() + base, trials));
}

ErrorStats TrialSet::ref_stats(int axis) const {
  return error_stats(std::span<const double>(ref_mils[axis]));
}

std::vector<double> pid_unit_step_errors(const TransferFunction& controller_tf,
                                         const TransferFunction& plant,
                                         const std::vector<int>& steps,
                                         double h) {
  const TransferFunction closed =
      close_unity(series(controller_tf, plant)).closed;
  const StateSpace dss = c2d_zoh(tf_to_ss(closed), h);
  const int total = steps.back() + 1;
  const Eigen::MatrixXd u = Eigen::MatrixXd::Ones(1, total);
  const SimulationResult sim = simulate(dss, u);
  std::vector<double> out;
  out.reserve(steps.size());
  for (int k : steps) out.push_back(1.0 - sim.outputs[0][k]);
  return out;
}

TrialRecord run_trial(const RunConfig& cfg, ControllerKind controller,
                      CaseKind kase, const Target& target,
                      const std::vector<double>& firing_times) {
  if (kase == CaseKind::kAimpointNoise)
    throw std::invalid_argument("run_trial: draw noise via experiment 2");
  const auto steps = firing_steps(firing_times, cfg.sim_step);
  const int total = steps.back() + 1;
  const Eigen::Vector2d ref_rad(radians_from_degrees(target.azimuth_deg),
                                radians_from_degrees(target.elevation_deg));

  TrialRecord record;
  record.target = target;
  record.firing_times = firing_times;

  if (controller == ControllerKind::kPid) {
    const auto ctrl = resolve_controllers(cfg);
    const auto [g1, g2] = axis_tfs(plant_for_case(cfg, kase));
    const TransferFunction loops[2] = {series(lead_tf(ctrl.lead_az), g1),
                                       series(pilead_tf(ctrl.pilead_el), g2)};
    for (int axis = 0; axis < 2; ++axis) {
      const StateSpace dss =
          c2d_zoh(tf_to_ss(close_unity(loops[axis]).closed), cfg.sim_step);
      const Eigen::MatrixXd u =
          Eigen::MatrixXd::Constant(1, total, ref_rad(axis));
      const SimulationResult sim = simulate(dss, u);
      for (int k : steps)
        record.errors_mils[axis].push_back(
            mils_from_radians(ref_rad(axis) - sim.outputs[0][k]));
    }
    return record;
  }

  const StateSpace model_d = c2d_zoh(linearize(cfg.turret), cfg.sim_step);
  const StateSpace plant_d =
      c2d_zoh(linearize(plant_for_case(cfg, kase)), cfg.sim_step);
  MpcController mpc(model_d, cfg.mpc);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  std::size_t next_f = 0;
  for (int k = 0; k < total && next_f < steps.size(); ++k) {
    const Eigen::Vector2d y = plant_d.C * x;
    if (k == steps[next_f]) {
      record.errors_mils[0].push_back(mils_from_radians(ref_rad(0) - y(0)));
      record.errors_mils[1].push_back(mils_from_radians(ref_rad(1) - y(1)));
      ++next_f;
    }
    const Eigen::Vector2d u = mpc.step(y, ref_rad);
    x = plant_d.A * x + plant_d.B * u;
  }
  return record;
}

Exp1Output run_experiment1(const RunConfig& cfg, ControllerKind controller) {
  Exp1Output out;
  out.controller = controller;
  const CaseKind cases[] = {CaseKind::kNominal, CaseKind::kDampingError,
                            CaseKind::kInertiaError};
  for (CaseKind kase : cases) {
    out.cases.push_back(controller == ControllerKind::kPid
                            ? pid_trial_set(cfg, kase)
                            : mpc_trial_set(cfg, kase));
  }
  return out;
}

Exp2Output run_experiment2(const RunConfig& cfg, ControllerKind controller) {
  Exp2Output out;
  out.controller = controller;
  out.set = controller == ControllerKind::kPid
                ? pid_trial_set(cfg, CaseKind::kAimpointNoise)
                : mpc_trial_set(cfg, CaseKind::kAimpointNoise);
  return out;
}

Exp3Output assemble_experiment3(const std::vector<Exp1Output>& exp1,
                                const std::vector<Exp2Output>& exp2) {
  Exp3Output out;
  auto add_curves = [&](ControllerKind controller, const TrialSet& set) {
    for (int axis = 0; axis < 2; ++axis) {
      Exp3Curve curve;
      curve.controller = controller;
      curve.kase = set.kase;
      curve.axis = axis;
      curve.firing_times = set.firing_times;
      for (std::size_t ti = 0; ti < set.firing_times.size(); ++ti) {
        const ErrorStats s = set.stats(axis, static_cast<int>(ti));
        curve.mu_mils.push_back(s.mu);
        curve.sigma_mils.push_back(s.sigma);
      }
      out.curves.push_back(std::move(curve));
    }
  };
  for (const auto& e : exp1)
    for (const auto& set : e.cases) add_curves(e.controller, set);
  for (const auto& e : exp2) add_curves(e.controller, e.set);
  return out;
}

Exp3Output run_experiment3(const RunConfig& cfg) {
  std::vector<Exp1Output> exp1{run_experiment1(cfg, ControllerKind::kPid),
                               run_experiment1(cfg, ControllerKind::kMpc)};
  std::vector<Exp2Output> exp2{run_experiment2(cfg, ControllerKind::kPid),
                               run_experiment2(cfg, ControllerKind::kMpc)};
  return assemble_experiment3(exp1, exp2);
}

TransferFunction build_error_system(const TransferFunction& controller_tf,
                                    const TransferFunction& plant,
                                    double tau_s) {
  if (!(tau_s > 0.0))
    throw std::invalid_argument("build_error_system: tau must be positive");
  const TransferFunction loop = series(controller_tf, plant);
  const Polynomial closed_den = loop.den + loop.num;
  return TransferFunction::continuous(loop.den,
                                      Polynomial{tau_s, 1.0} * closed_den);
}

double theoretical_sigma_e(double h2_norm, double sigma_w, double sample_time) {
  return h2_norm * sigma_w * std::sqrt(sample_time);
}

Exp4Output run_experiment4(const RunConfig& cfg) {
  const auto ctrl = resolve_controllers(cfg);
  const auto [g1, g2] = axis_tfs(cfg.turret);
  const double h = cfg.exp4_sample_time;
  const int record_step =
      static_cast<int>(std::llround(cfg.exp4_firing_time / h));

  Exp4Output out;
  out.sigma_w_mils = cfg.exp4_sigma_mils;
  out.sample_time = h;
  out.firing_time = cfg.exp4_firing_time;

  const TransferFunction systems[2] = {
      build_error_system(lead_tf(ctrl.lead_az), g1, cfg.exp4_tau),
      build_error_system(pilead_tf(ctrl.pilead_el), g2, cfg.exp4_tau)};
  const char* names[2] = {"azimuth", "elevation"};

  for (int axis = 0; axis < 2; ++axis) {
    Exp4Axis& result = out.axes[axis];
    result.axis_name = names[axis];

    const StateSpace dss = c2d_zoh(tf_to_ss(systems[axis]), h);
    result.error_system_d = ss_to_tf(dss);
    if (!is_stable_discrete(result.error_system_d))
      throw std::runtime_error("experiment 4: error system is unstable");
    result.h2_theory = h2_norm_discrete(result.error_system_d);
    result.sigma_theory_mils =
        theoretical_sigma_e(result.h2_theory, cfg.exp4_sigma_mils, h);

    kernels::FilterRealization realization;
    realization.n = dss.num_states();
    if (realization.n > kernels::kMaxFilterOrder)
      throw std::runtime_error("experiment 4: filter order too large");
    for (int i = 0; i < realization.n; ++i) {
      for (int j = 0; j < realization.n; ++j)
        realization.a[i * kernels::kMaxFilterOrder + j] = dss.A(i, j);
      realization.b[i] = dss.B(i, 0);
      realization.c[i] = dss.C(0, i);
    }
    realization.d = dss.D(0, 0);

    result.errors_mils.assign(cfg.trials, 0.0);
    std::vector<double> w_at_record(cfg.trials, 0.0);

    parallel_blocks(cfg.trials, cfg.workers, [&](int begin, int end) {
      const int width = end - begin;
      std::vector<double> noise(static_cast<std::size_t>(record_step + 1) *
                                width);
      for (int lane = 0; lane < width; ++lane) {
        NormalSampler sampler(
            stream_seed(cfg.seed, kTagExp4 + axis, begin + lane));
        for (int k = 0; k <= record_step; ++k)
          noise[static_cast<std::size_t>(k) * width + lane] =
              cfg.exp4_sigma_mils * sampler.next();
      }
      kernels::filter_block(realization, noise.data(), width, record_step,
                            result.errors_mils.data() + begin);
      for (int lane = 0; lane < width; ++lane)
        w_at_record[begin + lane] =
            noise[static_cast<std::size_t>(record_step) * width + lane];
    });

    const ErrorStats err = error_stats(result.errors_mils);
    const ErrorStats wst = error_stats(w_at_record);
    result.mu_hat_mils = err.mu;
    result.sigma_hat_mils = err.sigma;
    result.h2_hat = err.sigma / wst.sigma / std::sqrt(h);
    result.ks_stat = ks_statistic_vs_normal(result.errors_mils, 0.0,
                                            result.sigma_theory_mils);
    result.ks_critical_1pct = ks_critical_value(cfg.trials, 0.01);
  }
  return out;
}

Exp5Output run_experiment5(const RunConfig& cfg) {
  const auto ctrl = resolve_controllers(cfg);
  const auto [g1, g2] = axis_tfs(cfg.turret);
  const double h = cfg.sim_step;
  const double v_rad = radians_from_degrees(cfg.ramp_speed_deg_s);
  const int total = static_cast<int>(std::llround(cfg.ramp_duration_s / h)) + 1;

  Eigen::MatrixXd ramp(1, total);
  for (int k = 0; k < total; ++k) ramp(0, k) = v_rad * k * h;

  struct Setup {
    std::string name;
    TransferFunction loop;
    int axis;
    double oracle_rad;
  };
  const std::vector<Setup> setups = {
      {"lead", series(lead_tf(ctrl.lead_az), g1), 0,
       v_rad * cfg.turret.platform_damping / ctrl.lead_az.k_p},
      {"pilead", series(pilead_tf(ctrl.pilead_az_tracking), g1), 0, 0.0},
      {"pilead", series(pilead_tf(ctrl.pilead_el), g2), 1, 0.0}};

  Exp5Output out;
  for (const auto& setup : setups) {
    const FohModel foh =
        c2d_foh(tf_to_ss(close_unity(setup.loop).closed), h);
    const SimulationResult sim = simulate_foh(foh, ramp);

    Exp5Track track;
    track.controller_name = setup.name;
    track.axis = setup.axis;
    track.times = sim.times;
    track.ref_mils.resize(total);
    track.output_mils.resize(total);
    track.error_mils.resize(total);
    for (int k = 0; k < total; ++k) {
      track.ref_mils[k] = mils_from_radians(ramp(0, k));
      track.output_mils[k] = mils_from_radians(sim.outputs[0][k]);
      track.error_mils[k] = track.ref_mils[k] - track.output_mils[k];
    }
    // Steady state: mean over the final 10 % of the run.
    const int tail_begin = total - total / 10;
    double acc = 0.0;
    for (int k = tail_begin; k < total; ++k) acc += track.error_mils[k];
    track.e_ss_mils = acc / (total - tail_begin);
    track.oracle_mils = mils_from_radians(setup.oracle_rad);
    out.tracks.push_back(std::move(track));
  }
  return out;
}

}  // namespace turretsim
