#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "turretsim/checks.hpp"
#include "turretsim/config.hpp"
#include "turretsim/experiments.hpp"
#include "turretsim/io.hpp"
#include "turretsim/kernels/dispatch.hpp"
#include "turretsim/units.hpp"

namespace {

using namespace turretsim;

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;
  int workers = -1;
  std::string controller = "pid";
  bool check = false;
};

RunConfig effective_config(const CliOptions& opts) {
  RunConfig cfg =
      opts.config_path.empty() ? default_config() : load_config(opts.config_path);
  if (opts.seed_set) cfg.seed = opts.seed;
  if (opts.trials > 0) cfg.trials = opts.trials;
  if (opts.workers >= 0) cfg.workers = opts.workers;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  return cfg;
}

std::vector<ControllerKind> controllers_for(const CliOptions& opts) {
  if (opts.controller == "pid") return {ControllerKind::kPid};
  if (opts.controller == "mpc") return {ControllerKind::kMpc};
  return {ControllerKind::kPid, ControllerKind::kMpc};
}

int report_checks(const std::vector<CheckResult>& results) {
  std::cout << render_results(results);
  return all_passed(results) ? 0 : 1;
}

void print_stats_table(const Exp1Output& out) {
  std::printf("%-4s %-5s %-10s %12s %12s %8s\n", "ctrl", "case", "axis",
              "mu [mils]", "sigma [mils]", "c_v");
  for (const auto& set : out.cases) {
    for (std::size_t ti = 0; ti < set.firing_times.size(); ++ti) {
      if (set.firing_times[ti] > 6.0 + 1e-9) continue;
      for (int axis = 0; axis < 2; ++axis) {
        const ErrorStats s = set.stats(axis, static_cast<int>(ti));
        std::printf("%-4s %-5s %-10s %12.3e %12.3e %8s  t=%g s\n",
                    controller_label(out.controller), case_label(set.kase),
                    axis_label(axis), s.mu, s.sigma,
                    s.cv ? std::to_string(*s.cv).substr(0, 6).c_str() : "undef",
                    set.firing_times[ti]);
      }
    }
  }
}

int cmd_design(const CliOptions& opts, bool table) {
  const RunConfig cfg = effective_config(opts);
  const auto [g1, g2] = axis_tfs(cfg.turret);
  const double two_pi = 2.0 * std::numbers::pi;

  const LeadController lead = design_lead(g1, {1.78 * two_pi, 70.0});
  const PiLeadController pilead = design_pilead(g2, {2.06 * two_pi, 70.0});
  const MarginReport lead_m = verify_design(lead_tf(lead), g1);
  const MarginReport pil_m = verify_design(pilead_tf(pilead), g2);

  std::printf("synthesized controllers (targets 1.78 Hz / 2.06 Hz, PM 70 deg):\n");
  std::printf("  %-18s K_P=%.1f T_D=%.4f s gamma=%.4f -> %.3f Hz, %.2f deg\n",
              "azimuth lead", lead.k_p, lead.t_d, lead.gamma,
              lead_m.gain_crossover_hz, lead_m.phase_margin_deg);
  std::printf(
      "  %-18s K_P=%.1f T_D=%.4f s T_I=%.4f s gamma=%.4f -> %.3f Hz, %.2f deg\n",
      "elevation PI+lead", pilead.k_p, pilead.t_d, pilead.t_i, pilead.gamma,
      pil_m.gain_crossover_hz, pil_m.phase_margin_deg);
  if (table) {
    std::printf("reference rows for comparison:\n");
    std::printf("  %-18s K_P=%.1f T_D=%.4f s gamma=%.4f -> %.3f Hz, %.2f deg\n",
                "azimuth lead", 2120360.0, 0.42, 0.045, 1.78, 70.0);
    std::printf(
        "  %-18s K_P=%.1f T_D=%.4f s T_I=%.4f s gamma=%.4f -> %.3f Hz, %.2f "
        "deg\n",
        "elevation PI+lead", 1387706.0, 0.45, 0.78, 0.030, 2.06, 70.3);
    std::printf(
        "  %-18s K_P=%.1f T_D=%.4f s T_I=%.4f s gamma=%.4f -> %.3f Hz, %.2f "
        "deg (verified, not synthesized)\n",
        "azimuth PI+lead", 6507863.0, 0.32, 0.45, 0.020, 4.19, 70.7);
  }
  if (opts.check) return report_checks(check_designs(cfg));
  return 0;
}

int cmd_margins(const CliOptions& opts) {
  const RunConfig cfg = effective_config(opts);
  const auto ctrl = resolve_controllers(cfg);
  const auto [g1, g2] = axis_tfs(cfg.turret);
  struct Row {
    const char* name;
    TransferFunction loop;
  };
  const std::vector<Row> rows = {
      {"azimuth lead", series(lead_tf(ctrl.lead_az), g1)},
      {"azimuth PI+lead", series(pilead_tf(ctrl.pilead_az_tracking), g1)},
      {"elevation PI+lead", series(pilead_tf(ctrl.pilead_el), g2)}};
  std::printf("%-20s %12s %12s\n", "loop", "w_gc [Hz]", "PM [deg]");
  for (const auto& row : rows) {
    const auto report = margins(row.loop);
    if (report)
      std::printf("%-20s %12.4f %12.3f\n", row.name,
                  report->gain_crossover_hz, report->phase_margin_deg);
    else
      std::printf("%-20s %12s %12s\n", row.name, "none", "-");
  }
  if (opts.check) {
    auto results = check_designs(cfg);
    auto settle = check_pid_settling(cfg);
    results.insert(results.end(), settle.begin(), settle.end());
    return report_checks(results);
  }
  return 0;
}

int cmd_exp1(const CliOptions& opts) {
  RunConfig cfg = effective_config(opts);
  ensure_directory(cfg.out_dir);
  std::vector<Exp1Output> outputs;
  for (ControllerKind kind :
       opts.check ? std::vector<ControllerKind>{ControllerKind::kPid,
                                                ControllerKind::kMpc}
                  : controllers_for(opts)) {
    Exp1Output out = run_experiment1(cfg, kind);
    const std::string tag = controller_label(kind);
    write_file(cfg.out_dir + "/exp1_" + tag + ".csv", exp1_csv(out));
    write_file(cfg.out_dir + "/exp1_" + tag + "_constants.csv",
               exp1_constants_csv(out, 2.0));
    write_file(cfg.out_dir + "/exp1_" + tag + "_summary.json",
               exp1_summary_json(out, 2.0));
    print_stats_table(out);
    outputs.push_back(std::move(out));
  }
  if (opts.check) {
    if (outputs.size() < 2) return 1;
    return report_checks(check_exp1_stats(outputs[0], outputs[1]));
  }
  return 0;
}

int cmd_exp2(const CliOptions& opts) {
  RunConfig cfg = effective_config(opts);
  ensure_directory(cfg.out_dir);
  std::vector<Exp2Output> outputs;
  for (ControllerKind kind : controllers_for(opts)) {
    Exp2Output out = run_experiment2(cfg, kind);
    const std::string tag = controller_label(kind);
    write_file(cfg.out_dir + "/exp2_" + tag + ".csv", exp2_csv(out));
    write_file(cfg.out_dir + "/exp2_" + tag + "_summary.json",
               exp2_summary_json(out));
    for (double t : {3.0, 4.0, 5.0, 6.0}) {
      for (std::size_t ti = 0; ti < out.set.firing_times.size(); ++ti) {
        if (std::abs(out.set.firing_times[ti] - t) > 1e-9) continue;
        for (int axis = 0; axis < 2; ++axis) {
          char name[128];
          std::snprintf(name, sizeof(name), "%s/exp2_%s_hist_%s_tf%g.tsv",
                        cfg.out_dir.c_str(), tag.c_str(), axis_label(axis), t);
          write_file(name,
                     exp2_hist_tsv(out.set, axis, static_cast<int>(ti)));
        }
      }
    }
    std::printf("experiment 2 (%s): wrote stats for %zu firing times\n",
                tag.c_str(), out.set.firing_times.size());
    outputs.push_back(std::move(out));
  }
  if (opts.check) {
    for (const auto& out : outputs)
      if (out.controller == ControllerKind::kPid)
        return report_checks(check_exp2_stats(out));
    std::fprintf(stderr, "exp2 --check requires the pid controller\n");
    return 1;
  }
  return 0;
}

int cmd_exp3(const CliOptions& opts) {
  RunConfig cfg = effective_config(opts);
  ensure_directory(cfg.out_dir);
  const Exp3Output out = run_experiment3(cfg);
  write_file(cfg.out_dir + "/exp3_curves.csv", exp3_csv(out));
  std::printf("experiment 3: wrote %zu mean-vs-firing-time curves\n",
              out.curves.size());
  return 0;
}

int cmd_exp4(const CliOptions& opts) {
  RunConfig cfg = effective_config(opts);
  ensure_directory(cfg.out_dir);
  const Exp4Output out = run_experiment4(cfg);
  write_file(cfg.out_dir + "/exp4.csv", exp4_csv(out));
  write_file(cfg.out_dir + "/exp4_summary.json", exp4_summary_json(out));
  for (const auto& axis : out.axes)
    write_file(cfg.out_dir + "/exp4_hist_" + axis.axis_name + ".tsv",
               exp4_hist_tsv(axis));
  for (const auto& axis : out.axes) {
    std::printf(
        "%s: ||H||2 theory %.4f, empirical %.4f; sigma_e theory %.5f mils, "
        "empirical %.5f mils\n",
        axis.axis_name.c_str(), axis.h2_theory, axis.h2_hat,
        axis.sigma_theory_mils, axis.sigma_hat_mils);
  }
  if (opts.check) return report_checks(check_exp4_stats(out));
  return 0;
}

int cmd_exp5(const CliOptions& opts) {
  RunConfig cfg = effective_config(opts);
  ensure_directory(cfg.out_dir);
  const Exp5Output out = run_experiment5(cfg);
  write_file(cfg.out_dir + "/exp5_tracking.csv", exp5_csv(out));
  write_file(cfg.out_dir + "/exp5_summary.csv", exp5_summary_csv(out));
  write_file(cfg.out_dir + "/exp5_summary.json", exp5_summary_json(out));
  for (const auto& track : out.tracks)
    std::printf("%s %s: e_ss = %.4f mils (oracle %.4f)\n",
                track.controller_name.c_str(), axis_label(track.axis),
                track.e_ss_mils, track.oracle_mils);
  if (opts.check) return report_checks(check_ramp_tracking(out));
  return 0;
}

int cmd_validate(const CliOptions& opts) {
  if (opts.config_path.empty()) {
    std::printf("no config file given; built-in defaults are valid\n");
    return 0;
  }
  const auto diags = validate_config(opts.config_path);
  if (diags.empty()) {
    std::printf("%s: ok\n", opts.config_path.c_str());
    return 0;
  }
  for (const auto& d : diags) std::printf("%s\n", d.c_str());
  return 1;
}

int cmd_all(const CliOptions& opts) {
  CliOptions sub = opts;
  sub.controller = "both";
  int rc = 0;
  rc |= cmd_exp1(sub);
  rc |= cmd_exp2(sub);
  rc |= cmd_exp3(sub);
  rc |= cmd_exp4(sub);
  rc |= cmd_exp5(sub);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gun-turret control simulation and aiming-error study"};
  app.require_subcommand(1);

  CliOptions opts;
  app.add_option("--config", opts.config_path, "INI config file");
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--seed", opts.seed, "master seed")
      ->each([&](const std::string&) { opts.seed_set = true; });
  app.add_option("--trials", opts.trials, "Monte Carlo trials");
  app.add_option("--workers", opts.workers, "worker threads (0 = hardware)");
  app.add_flag("--check", opts.check, "run the built-in result checks");

  bool table2 = false;
  auto* design = app.add_subcommand("design", "synthesize the controllers");
  design->add_flag("--table2", table2, "print the reference rows side by side");
  auto* margins_cmd =
      app.add_subcommand("margins", "crossover and phase margin of each loop");
  auto* exp1 = app.add_subcommand("exp1", "parameter-error sensitivity study");
  auto* exp2 = app.add_subcommand("exp2", "aimpoint-noise study");
  auto* exp3 = app.add_subcommand("exp3", "mean error vs firing time curves");
  auto* exp4 = app.add_subcommand("exp4", "white-noise error statistics");
  auto* exp5 = app.add_subcommand("exp5", "moving-target tracking");
  auto* validate = app.add_subcommand("validate", "validate a config file");
  auto* all = app.add_subcommand("all", "run every experiment");
  for (auto* cmd : {exp1, exp2}) {
    cmd->add_option("--controller", opts.controller,
                    "controller: pid, mpc or both")
        ->check(CLI::IsMember({"pid", "mpc", "both"}));
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(design)) return cmd_design(opts, table2);
    if (app.got_subcommand(margins_cmd)) return cmd_margins(opts);
    if (app.got_subcommand(exp1)) return cmd_exp1(opts);
    if (app.got_subcommand(exp2)) return cmd_exp2(opts);
    if (app.got_subcommand(exp3)) return cmd_exp3(opts);
    if (app.got_subcommand(exp4)) return cmd_exp4(opts);
    if (app.got_subcommand(exp5)) return cmd_exp5(opts);
    if (app.got_subcommand(validate)) return cmd_validate(opts);
    if (app.got_subcommand(all)) return cmd_all(opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
