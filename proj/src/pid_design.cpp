#include "turretsim/pid_design.hpp"

#include <cmath>
#include <numbers>

namespace turretsim {

namespace {

constexpr double kPi = std::numbers::pi;

void check_spec(const DesignSpec& spec) {
  if (!(spec.omega_gc > 0.0))
    throw std::invalid_argument("design spec: omega_gc must be positive");
  if (!(spec.pm_deg > 0.0 && spec.pm_deg < 90.0))
    throw std::invalid_argument("design spec: PM must lie in (0, 90) deg");
}

struct LeadSection {
  double k_p, t_d, gamma;
};

LeadSection lead_section(const TransferFunction& plant, const DesignSpec& spec,
                         double fudge_deg) {
  check_spec(spec);
  const std::complex<double> g = freq_response(plant, spec.omega_gc);
  const double phi_add = spec.pm_deg * kPi / 180.0 - kPi - std::arg(g) +
                         fudge_deg * kPi / 180.0;
  const double phi_deg = phi_add * 180.0 / kPi;
  if (!(phi_deg > 0.0 && phi_deg < 90.0))
    throw DesignInfeasible("lead design infeasible: required phase addition " +
                               std::to_string(phi_deg) +
                               " deg outside (0, 90)",
                           phi_deg);
  const double s = std::sin(phi_add);
  const double gamma = (1.0 - s) / (1.0 + s);
  const double sqrt_gamma = std::sqrt(gamma);
  return {sqrt_gamma / std::abs(g), 1.0 / (sqrt_gamma * spec.omega_gc), gamma};
}

}  // namespace

TransferFunction lead_tf(const LeadController& c) {
  if (!(c.gamma > 0.0 && c.gamma < 1.0) || !(c.t_d > 0.0) || !(c.k_p > 0.0))
    throw std::invalid_argument("lead controller parameters out of range");
  return TransferFunction::continuous(
      Polynomial{c.k_p * c.t_d, c.k_p},
      Polynomial{c.gamma * c.t_d, 1.0});
}

TransferFunction pilead_tf(const PiLeadController& c) {
  if (!(c.gamma > 0.0 && c.gamma < 1.0) || !(c.t_d > 0.0) || !(c.t_i > 0.0) ||
      !(c.k_p > 0.0))
    throw std::invalid_argument("PI+lead controller parameters out of range");
  const Polynomial pi_num{c.k_p, c.k_p / c.t_i};
  const Polynomial lead_num{c.t_d, 1.0};
  const Polynomial pi_den{1.0, 0.0};
  const Polynomial lead_den{c.gamma * c.t_d, 1.0};
  return TransferFunction::continuous(pi_num * lead_num, pi_den * lead_den);
}

LeadController design_lead(const TransferFunction& plant,
                           const DesignSpec& spec) {
  const auto s = lead_section(plant, spec, 0.0);
  return {s.k_p, s.t_d, s.gamma};
}

PiLeadController design_pilead(const TransferFunction& plant,
                               const DesignSpec& spec) {
  const auto s = lead_section(plant, spec, 6.0);
  return {s.k_p, s.t_d, 10.0 / spec.omega_gc, s.gamma};
}

LeadController scale_gain(const LeadController& c, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("gain factor must be positive");
  return {c.k_p * factor, c.t_d, c.gamma};
}

PiLeadController scale_gain(const PiLeadController& c, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("gain factor must be positive");
  return {c.k_p * factor, c.t_d, c.t_i, c.gamma};
}

MarginReport verify_design(const TransferFunction& controller,
                           const TransferFunction& plant) {
  const auto report = margins(series(controller, plant));
  if (!report)
    throw std::runtime_error("verify_design: loop has no unity crossing in band");
  return *report;
}

}  // namespace turretsim
