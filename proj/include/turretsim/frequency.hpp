#pragma once

#include <optional>
#include <vector>

#include "turretsim/transfer_function.hpp"

namespace turretsim {

struct MarginReport {
  double gain_crossover_hz = 0.0;
  double phase_margin_deg = 0.0;
};

struct FrequencySweep {
  std::vector<double> omega;      // rad/s
  std::vector<double> magnitude;
  std::vector<double> phase_deg;  // unwrapped continuously along the sweep
};

// Logarithmic sweep with continuity-tracked phase unwrapping. The phase at
// the lowest frequency is anchored to the system-type asymptote
// (-90 deg per free integrator), which all loops here approach by 1e-3 rad/s.
FrequencySweep frequency_sweep(const TransferFunction& sys,
                               double omega_lo = 1e-3, double omega_hi = 1e3,
                               int points = 2000);

// Gain crossover by bisection on |L(jw)| - 1 after bracketing on the sweep
// grid; phase margin is 180 deg plus the unwrapped loop phase there.
// Returns nullopt when no crossing lies in the scanned band; throws when the
// magnitude crosses unity more than once.
std::optional<MarginReport> margins(const TransferFunction& loop);

}  // namespace turretsim
