#include <doctest.h>

#include <cmath>
#include <numbers>

#include "turretsim/transfer_function.hpp"
#include "turretsim/turret.hpp"

using namespace turretsim;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("polynomial arithmetic and evaluation") {
  const Polynomial a{1.0, 2.0, 3.0};  // x^2 + 2x + 3
  CHECK(a.degree() == 2);
  CHECK(a.eval(2.0) == doctest::Approx(11.0));

  const Polynomial b{1.0, 0.0};  // x
  const Polynomial prod = a * b;
  CHECK(prod.degree() == 3);
  CHECK(prod.eval(2.0) == doctest::Approx(22.0));

  const Polynomial sum = a + b;
  CHECK(sum.eval(2.0) == doctest::Approx(13.0));

  // Leading zeros trim away.
  const Polynomial trimmed{0.0, 0.0, 5.0, 1.0};
  CHECK(trimmed.degree() == 1);
  CHECK(trimmed.leading() == 5.0);

  CHECK(Polynomial{}.is_zero());
  CHECK((a * Polynomial{}).is_zero());

  CHECK(Polynomial{1.0, 0.0, 0.0}.order_at_origin() == 2);
  CHECK(a.order_at_origin() == 0);
}

TEST_CASE("frequency response of a pure integrator") {
  const auto sys =
      TransferFunction::continuous(Polynomial{1.0}, Polynomial{1.0, 0.0});
  const auto v = freq_response(sys, 1.0);
  CHECK(std::abs(v) == doctest::Approx(1.0));
  CHECK(std::arg(v) * 180.0 / kPi == doctest::Approx(-90.0));
}

TEST_CASE("azimuth plant response at the design crossover") {
  const auto [g1, g2] = axis_tfs(TurretParams{});
  const auto v = freq_response(g1, 11.184);
  CHECK(std::abs(v) == doctest::Approx(9.98e-8).epsilon(1e-3));
  CHECK(std::arg(v) * 180.0 / kPi == doctest::Approx(-176.16).epsilon(1e-3));
}

TEST_CASE("maximum lead phase at the geometric-mean frequency") {
  // Lead section phase peaks at w = 1/(sqrt(gamma) T_D) with value
  // asin((1-gamma)/(1+gamma)).
  const double gamma = 0.045;
  const double t_d = 0.42;
  const auto lead = TransferFunction::continuous(Polynomial{t_d, 1.0},
                                                 Polynomial{gamma * t_d, 1.0});
  const double w_peak = 1.0 / (std::sqrt(gamma) * t_d);
  const double expected = std::asin((1.0 - gamma) / (1.0 + gamma));
  CHECK(std::arg(freq_response(lead, w_peak)) ==
        doctest::Approx(expected).epsilon(1e-9));
  // Nearby frequencies give strictly less phase.
  CHECK(std::arg(freq_response(lead, 0.8 * w_peak)) < expected);
  CHECK(std::arg(freq_response(lead, 1.25 * w_peak)) < expected);
}

TEST_CASE("evaluation at a pole reports a singular point") {
  const auto sys =
      TransferFunction::continuous(Polynomial{1.0}, Polynomial{1.0, 0.0, 1.0});
  CHECK_THROWS_AS((void)freq_response(sys, 1.0), std::domain_error);
}

TEST_CASE("series composition") {
  const auto integrator =
      TransferFunction::continuous(Polynomial{1.0}, Polynomial{1.0, 0.0});
  const auto twice = series(integrator, integrator);
  CHECK(twice.den.degree() == 2);
  CHECK(std::abs(freq_response(twice, 2.0)) == doctest::Approx(0.25));

  const auto identity =
      TransferFunction::continuous(Polynomial{1.0}, Polynomial{1.0});
  const auto same = series(integrator, identity);
  CHECK(std::abs(freq_response(same, 3.0)) == doctest::Approx(1.0 / 3.0));

  const auto discrete =
      TransferFunction::discrete(Polynomial{1.0}, Polynomial{1.0, 0.0}, 0.01);
  CHECK_THROWS_AS((void)series(integrator, discrete), std::invalid_argument);
}

TEST_CASE("unity feedback closure") {
  const auto integrator =
      TransferFunction::continuous(Polynomial{1.0}, Polynomial{1.0, 0.0});
  const auto fb = close_unity(integrator);
  // L = 1/s: closed = 1/(s+1), error = s/(s+1).
  CHECK(std::abs(freq_response(fb.closed, 1.0)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(freq_response(fb.error_tf, 1.0)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)));
  // Type-1 loop: zero DC error.
  CHECK(std::abs(freq_response(fb.error_tf, 1e-9)) < 1e-8);
}
