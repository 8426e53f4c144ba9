#include "turretsim/frequency.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace turretsim {

namespace {

constexpr double kPi = std::numbers::pi;

double principal_deg(std::complex<double> v) {
  return std::arg(v) * 180.0 / kPi;
}

// Shift `raw` by a multiple of 360 so it lands nearest `reference`.
double align_to(double raw, double reference) {
  return raw + 360.0 * std::round((reference - raw) / 360.0);
}

}  // namespace

FrequencySweep frequency_sweep(const TransferFunction& sys, double omega_lo,
                               double omega_hi, int points) {
  if (points < 2 || omega_lo <= 0.0 || omega_hi <= omega_lo)
    throw std::invalid_argument("frequency_sweep: bad sweep parameters");

  FrequencySweep sweep;
  sweep.omega.resize(points);
  sweep.magnitude.resize(points);
  sweep.phase_deg.resize(points);

  const double log_lo = std::log10(omega_lo);
  const double step = (std::log10(omega_hi) - log_lo) / (points - 1);
  const double anchor = -90.0 * sys.system_type();

  for (int i = 0; i < points; ++i) {
    const double w = std::pow(10.0, log_lo + i * step);
    const std::complex<double> v = freq_response(sys, w);
    sweep.omega[i] = w;
    sweep.magnitude[i] = std::abs(v);
    const double raw = principal_deg(v);
    sweep.phase_deg[i] =
        align_to(raw, i == 0 ? anchor : sweep.phase_deg[i - 1]);
  }
  return sweep;
}

std::optional<MarginReport> margins(const TransferFunction& loop) {
  const FrequencySweep sweep = frequency_sweep(loop);
  const int points = static_cast<int>(sweep.omega.size());

  int bracket = -1;
  for (int i = 0; i + 1 < points; ++i) {
    const double a = sweep.magnitude[i] - 1.0;
    const double b = sweep.magnitude[i + 1] - 1.0;
    if (a == 0.0) continue;
    if (a * b <= 0.0) {
      if (bracket >= 0)
        throw std::runtime_error("margins: multiple unity crossings in band");
      bracket = i;
    }
  }
  if (bracket < 0) return std::nullopt;

  double lo = sweep.omega[bracket];
  double hi = sweep.omega[bracket + 1];
  const double mag_lo = sweep.magnitude[bracket] - 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double v = std::abs(freq_response(loop, mid)) - 1.0;
    if (mag_lo * v <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  const double wgc = 0.5 * (lo + hi);

  // Continue the unwrapped phase from the bracketing grid point to wgc.
  const double phase =
      align_to(principal_deg(freq_response(loop, wgc)), sweep.phase_deg[bracket]);

  MarginReport report;
  report.gain_crossover_hz = wgc / (2.0 * kPi);
  report.phase_margin_deg = 180.0 + phase;
  return report;
}

}  // namespace turretsim
