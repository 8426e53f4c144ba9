#include "kernels_impl.hpp"

namespace turretsim::kernels::detail {

void magnitude_squared_grid_scalar(const double* num, int num_len,
                                   const double* den, int den_len,
                                   const double* re, const double* im,
                                   double* out, int begin, int end) {
  for (int i = begin; i < end; ++i) {
    const double zr = re[i];
    const double zi = im[i];

    double nr = num[0], ni = 0.0;
    for (int k = 1; k < num_len; ++k) {
      const double tr = nr * zr - ni * zi + num[k];
      const double ti = nr * zi + ni * zr;
      nr = tr;
      ni = ti;
    }
    double dr = den[0], di = 0.0;
    for (int k = 1; k < den_len; ++k) {
      const double tr = dr * zr - di * zi + den[k];
      const double ti = dr * zi + di * zr;
      dr = tr;
      di = ti;
    }
    const double n2 = nr * nr + ni * ni;
    const double d2 = dr * dr + di * di;
    out[i] = n2 / d2;
  }
}

void filter_block_scalar(const FilterRealization& sys, const double* w,
                         int width, int lane_begin, int lane_end,
                         int record_step, double* out) {
  const int n = sys.n;
  for (int lane = lane_begin; lane < lane_end; ++lane) {
    double x[kMaxFilterOrder] = {};
    double xn[kMaxFilterOrder];
    double y = 0.0;
    for (int k = 0; k <= record_step; ++k) {
      const double wk = w[static_cast<long>(k) * width + lane];
      y = sys.d * wk;
      for (int i = 0; i < n; ++i) y += sys.c[i] * x[i];
      for (int i = 0; i < n; ++i) {
        double acc = sys.b[i] * wk;
        const double* row = sys.a + i * kMaxFilterOrder;
        for (int j = 0; j < n; ++j) acc += row[j] * x[j];
        xn[i] = acc;
      }
      for (int i = 0; i < n; ++i) x[i] = xn[i];
    }
    out[lane] = y;
  }
}

void mpc_axis_trials_scalar(const MpcAxisPlan& plan, const double* amplitudes,
                            int n_trials, int trial_begin, int trial_end,
                            const int* firing_steps, int n_firing,
                            int total_steps, double* errors,
                            unsigned char* flags) {
  const double lo = plan.y_min - plan.feas_tol;
  const double hi = plan.y_max + plan.feas_tol;
  const int rows = static_cast<int>(plan.g.size());

  for (int t = trial_begin; t < trial_end; ++t) {
    const double p = amplitudes[t];
    double xp0 = 0.0, xp1 = 0.0;  // plant state
    double xh0 = 0.0, xh1 = 0.0;  // model estimate (a priori)
    double up = 0.0;
    bool violated = false;
    int next_f = 0;

    for (int k = 0; k < total_steps; ++k) {
      const double y = xp0;
      if (next_f < n_firing && k == firing_steps[next_f]) {
        errors[static_cast<long>(next_f) * n_trials + t] = p - y;
        ++next_f;
      }
      const double inn = y - xh0;
      const double xc0 = xh0 + plan.m_obs[0] * inn;
      const double xc1 = xh1 + plan.m_obs[1] * inn;

      double u = plan.kx[0] * xc0;
      u += plan.kx[1] * xc1;
      u += plan.ku * up;
      u += plan.kr * p;

      for (int i = 0; i < rows; ++i) {
        const auto& g = plan.g[i];
        double yp = g[0] * xc0;
        yp += g[1] * xc1;
        yp += g[2] * up;
        yp += g[3] * p;
        violated = violated || yp < lo || yp > hi;
      }

      const double np0 = plan.adp[0] * xp0 + plan.adp[1] * xp1 + plan.bdp[0] * u;
      const double np1 = plan.adp[2] * xp0 + plan.adp[3] * xp1 + plan.bdp[1] * u;
      const double nh0 = plan.adm[0] * xc0 + plan.adm[1] * xc1 + plan.bdm[0] * u;
      const double nh1 = plan.adm[2] * xc0 + plan.adm[3] * xc1 + plan.bdm[1] * u;
      xp0 = np0;
      xp1 = np1;
      xh0 = nh0;
      xh1 = nh1;
      up = u;
    }
    flags[t] = violated ? 1 : 0;
  }
}

}  // namespace turretsim::kernels::detail
