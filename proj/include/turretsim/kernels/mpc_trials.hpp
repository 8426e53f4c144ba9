#pragma once

#include <array>
#include <vector>

namespace turretsim::kernels {

// One decoupled axis of the receding-horizon loop, reduced to the
// unconstrained first-move law plus the predicted-output feasibility map.
// All 2x2 matrices are row-major.
struct MpcAxisPlan {
  double adm[4] = {};  // internal model
  double bdm[2] = {};
  double adp[4] = {};  // simulated plant (may be perturbed)
  double bdp[2] = {};
  double m_obs[2] = {};           // current-estimator correction gains
  double kx[2] = {};              // applied move u = kx.x_hat + ku*u_prev + kr*P
  double ku = 0.0;
  double kr = 0.0;
  // Predicted outputs over the horizon under the optimal unconstrained moves:
  // y_pred[i] = g[i][0]*xh0 + g[i][1]*xh1 + g[i][2]*u_prev + g[i][3]*P.
  std::vector<std::array<double, 4>> g;
  double y_min = 0.0;
  double y_max = 0.0;
  double feas_tol = 1e-9;
};

// Simulate step-reference closed loops (reference amplitudes[t]) for trials
// in [trial_begin, trial_end) out of n_trials total, for total_steps steps,
// recording errors[f * n_trials + t] = P - y_plant at each firing step.
// flags[t] is set to 1 when the unconstrained solution would violate a soft
// output bound at any step of trial t; such trials must be recomputed with
// the full constrained controller. Results are independent of how the trial
// range is partitioned.
void mpc_axis_trials(const MpcAxisPlan& plan, const double* amplitudes,
                     int n_trials, int trial_begin, int trial_end,
                     const int* firing_steps, int n_firing, int total_steps,
                     double* errors, unsigned char* flags);

}  // namespace turretsim::kernels
