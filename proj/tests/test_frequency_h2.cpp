#include <doctest.h>

#include <cmath>
#include <numbers>

#include "turretsim/discretize.hpp"
#include "turretsim/experiments.hpp"
#include "turretsim/frequency.hpp"
#include "turretsim/h2norm.hpp"
#include "turretsim/pid_design.hpp"
#include "turretsim/state_space.hpp"
#include "turretsim/turret.hpp"

using namespace turretsim;

TEST_CASE("margins of a pure integrator loop") {
  const auto loop =
      TransferFunction::continuous(Polynomial{1.0}, Polynomial{1.0, 0.0});
  const auto report = margins(loop);
  REQUIRE(report.has_value());
  CHECK(report->gain_crossover_hz * 2.0 * std::numbers::pi ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report->phase_margin_deg == doctest::Approx(90.0).epsilon(1e-9));
}

TEST_CASE("no unity crossing is reported explicitly") {
  // Static gain 0.5 never crosses unity.
  const auto loop =
      TransferFunction::continuous(Polynomial{0.5}, Polynomial{1.0});
  CHECK(!margins(loop).has_value());
}

TEST_CASE("unity gain at the crossover for every designed loop") {
  const auto [g1, g2] = axis_tfs(TurretParams{});
  const LeadController lead =
      design_lead(g1, {1.78 * 2.0 * std::numbers::pi, 70.0});
  const auto loop = series(lead_tf(lead), g1);
  const auto report = margins(loop);
  REQUIRE(report.has_value());
  const double wgc = report->gain_crossover_hz * 2.0 * std::numbers::pi;
  CHECK(std::abs(freq_response(loop, wgc)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sweep phase is anchored at the type asymptote") {
  // Double integrator with a PI factor: phase starts at -180 deg.
  const auto [g1, g2] = axis_tfs(TurretParams{});
  const PiLeadController c{6507863.0, 0.32, 0.45, 0.020};
  const auto sweep = frequency_sweep(series(pilead_tf(c), g1));
  CHECK(sweep.phase_deg.front() == doctest::Approx(-180.0).epsilon(1e-2));
}

TEST_CASE("h2 norm of the identity system") {
  const double h = 0.02;
  const auto unity = TransferFunction::discrete(Polynomial{1.0}, Polynomial{1.0}, h);
  // Constant integrand: ||H||_2 = sqrt(1/h).
  CHECK(h2_norm_discrete(unity) ==
        doctest::Approx(std::sqrt(1.0 / h)).epsilon(1e-6));
}

TEST_CASE("h2 norm rejects unstable systems") {
  const auto unstable =
      TransferFunction::discrete(Polynomial{1.0}, Polynomial{1.0, -1.5}, 0.02);
  CHECK(!is_stable_discrete(unstable));
  CHECK_THROWS_AS((void)h2_norm_discrete(unstable), std::invalid_argument);
}

TEST_CASE("h2 norm of a one-pole lag matches the closed form") {
  // y[k+1] = a y[k] + u[k]: sum of squared impulse response = 1/(1-a^2);
  // the integral definition scales it by the sampling rate.
  const double a = 0.8, h = 0.02;
  const auto sys =
      TransferFunction::discrete(Polynomial{1.0}, Polynomial{1.0, -a}, h);
  const double expected = std::sqrt(1.0 / (1.0 - a * a) / h);
  CHECK(h2_norm_discrete(sys) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("aimpoint error systems match the reference study norms") {
  const RunConfig cfg = default_config();
  const auto ctrl = resolve_controllers(cfg);
  const auto [g1, g2] = axis_tfs(cfg.turret);
  const double h = 0.02;

  const TransferFunction h_az =
      ss_to_tf(c2d_zoh(tf_to_ss(build_error_system(lead_tf(ctrl.lead_az), g1,
                                                   2.0)),
                       h));
  const TransferFunction h_el = ss_to_tf(c2d_zoh(
      tf_to_ss(build_error_system(pilead_tf(ctrl.pilead_el), g2, 2.0)), h));

  CHECK(h2_norm_discrete(h_az) == doctest::Approx(0.1149).epsilon(0.002));
  CHECK(h2_norm_discrete(h_el) == doctest::Approx(0.1074).epsilon(0.002));
}

TEST_CASE("perfect control sends the error system to zero") {
  // Huge static controller gain: H = 1/((tau s + 1)(1 + K G)) collapses.
  const auto [g1, g2] = axis_tfs(TurretParams{});
  const auto big_gain =
      TransferFunction::continuous(Polynomial{1.0e12}, Polynomial{1.0});
  const TransferFunction h = build_error_system(big_gain, g1, 2.0);
  CHECK(std::abs(freq_response(h, 1.0)) < 1e-3);
}
