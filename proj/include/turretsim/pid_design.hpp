#pragma once

#include <stdexcept>

#include "turretsim/frequency.hpp"
#include "turretsim/transfer_function.hpp"

namespace turretsim {

// Target gain-crossover frequency and phase margin for loop shaping.
struct DesignSpec {
  double omega_gc = 0.0;  // rad/s
  double pm_deg = 0.0;    // degrees, in (0, 90)
};

// C(s) = K_P (T_D s + 1) / (gamma T_D s + 1), 0 < gamma < 1.
struct LeadController {
  double k_p = 0.0;
  double t_d = 0.0;
  double gamma = 0.0;
};

// C(s) = K_P (s + 1/T_I)/s * (T_D s + 1)/(gamma T_D s + 1).
struct PiLeadController {
  double k_p = 0.0;
  double t_d = 0.0;
  double t_i = 0.0;
  double gamma = 0.0;
};

class DesignInfeasible : public std::runtime_error {
 public:
  DesignInfeasible(const std::string& what, double phi_add_deg)
      : std::runtime_error(what), phi_add_deg_(phi_add_deg) {}
  double phi_add_deg() const { return phi_add_deg_; }

 private:
  double phi_add_deg_;
};

TransferFunction lead_tf(const LeadController& c);
TransferFunction pilead_tf(const PiLeadController& c);

// Loop-shaping synthesis: add phi_add = PM - 180 - angle(G(j w_gc)) of phase
// with a lead section placed at w_gc, then set the gain for unity loop
// magnitude there. Throws DesignInfeasible unless phi_add is in (0, 90) deg.
LeadController design_lead(const TransferFunction& plant, const DesignSpec& spec);

// Same synthesis with a 6 deg allowance for the PI phase lag and the PI zero
// a decade below the crossover (T_I = 10 / w_gc).
PiLeadController design_pilead(const TransferFunction& plant,
                               const DesignSpec& spec);

LeadController scale_gain(const LeadController& c, double factor);
PiLeadController scale_gain(const PiLeadController& c, double factor);

// Measured crossover and phase margin of the loop C*G.
MarginReport verify_design(const TransferFunction& controller,
                           const TransferFunction& plant);

}  // namespace turretsim
