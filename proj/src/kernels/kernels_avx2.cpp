#include "kernels_impl.hpp"

#ifdef __AVX2__

#include <immintrin.h>

namespace turretsim::kernels::detail {

// Each kernel mirrors the scalar operation sequence exactly (mul/add only,
// no FMA) so results are bit-identical lane by lane.

void magnitude_squared_grid_avx2(const double* num, int num_len,
                                 const double* den, int den_len,
                                 const double* re, const double* im,
                                 double* out, int begin, int end) {
  int i = begin;
  for (; i + 4 <= end; i += 4) {
    const __m256d zr = _mm256_loadu_pd(re + i);
    const __m256d zi = _mm256_loadu_pd(im + i);

    __m256d nr = _mm256_set1_pd(num[0]);
    __m256d ni = _mm256_setzero_pd();
    for (int k = 1; k < num_len; ++k) {
      const __m256d tr = _mm256_add_pd(
          _mm256_sub_pd(_mm256_mul_pd(nr, zr), _mm256_mul_pd(ni, zi)),
          _mm256_set1_pd(num[k]));
      const __m256d ti =
          _mm256_add_pd(_mm256_mul_pd(nr, zi), _mm256_mul_pd(ni, zr));
      nr = tr;
      ni = ti;
    }
    __m256d dr = _mm256_set1_pd(den[0]);
    __m256d di = _mm256_setzero_pd();
    for (int k = 1; k < den_len; ++k) {
      const __m256d tr = _mm256_add_pd(
          _mm256_sub_pd(_mm256_mul_pd(dr, zr), _mm256_mul_pd(di, zi)),
          _mm256_set1_pd(den[k]));
      const __m256d ti =
          _mm256_add_pd(_mm256_mul_pd(dr, zi), _mm256_mul_pd(di, zr));
      dr = tr;
      di = ti;
    }
    const __m256d n2 =
        _mm256_add_pd(_mm256_mul_pd(nr, nr), _mm256_mul_pd(ni, ni));
    const __m256d d2 =
        _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
    _mm256_storeu_pd(out + i, _mm256_div_pd(n2, d2));
  }
  if (i < end)
    magnitude_squared_grid_scalar(num, num_len, den, den_len, re, im, out, i,
                                  end);
}

void filter_block_avx2(const FilterRealization& sys, const double* w,
                       int width, int lane_begin, int lane_end,
                       int record_step, double* out) {
  const int n = sys.n;
  int lane = lane_begin;
  for (; lane + 4 <= lane_end; lane += 4) {
    __m256d x[kMaxFilterOrder];
    __m256d xn[kMaxFilterOrder];
    for (int i = 0; i < n; ++i) x[i] = _mm256_setzero_pd();
    __m256d y = _mm256_setzero_pd();

    for (int k = 0; k <= record_step; ++k) {
      const __m256d wk =
          _mm256_loadu_pd(w + static_cast<long>(k) * width + lane);
      y = _mm256_mul_pd(_mm256_set1_pd(sys.d), wk);
      for (int i = 0; i < n; ++i)
        y = _mm256_add_pd(y, _mm256_mul_pd(_mm256_set1_pd(sys.c[i]), x[i]));
      for (int i = 0; i < n; ++i) {
        __m256d acc = _mm256_mul_pd(_mm256_set1_pd(sys.b[i]), wk);
        const double* row = sys.a + i * kMaxFilterOrder;
        for (int j = 0; j < n; ++j)
          acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(row[j]), x[j]));
        xn[i] = acc;
      }
      for (int i = 0; i < n; ++i) x[i] = xn[i];
    }
    _mm256_storeu_pd(out + lane, y);
  }
  if (lane < lane_end)
    filter_block_scalar(sys, w, width, lane, lane_end, record_step, out);
}

void mpc_axis_trials_avx2(const MpcAxisPlan& plan, const double* amplitudes,
                          int n_trials, int trial_begin, int trial_end,
                          const int* firing_steps, int n_firing,
                          int total_steps, double* errors,
                          unsigned char* flags) {
  const __m256d lo = _mm256_set1_pd(plan.y_min - plan.feas_tol);
  const __m256d hi = _mm256_set1_pd(plan.y_max + plan.feas_tol);
  const int rows = static_cast<int>(plan.g.size());

  const __m256d adp0 = _mm256_set1_pd(plan.adp[0]);
  const __m256d adp1 = _mm256_set1_pd(plan.adp[1]);
  const __m256d adp2 = _mm256_set1_pd(plan.adp[2]);
  const __m256d adp3 = _mm256_set1_pd(plan.adp[3]);
  const __m256d bdp0 = _mm256_set1_pd(plan.bdp[0]);
  const __m256d bdp1 = _mm256_set1_pd(plan.bdp[1]);
  const __m256d adm0 = _mm256_set1_pd(plan.adm[0]);
  const __m256d adm1 = _mm256_set1_pd(plan.adm[1]);
  const __m256d adm2 = _mm256_set1_pd(plan.adm[2]);
  const __m256d adm3 = _mm256_set1_pd(plan.adm[3]);
  const __m256d bdm0 = _mm256_set1_pd(plan.bdm[0]);
  const __m256d bdm1 = _mm256_set1_pd(plan.bdm[1]);
  const __m256d m0 = _mm256_set1_pd(plan.m_obs[0]);
  const __m256d m1 = _mm256_set1_pd(plan.m_obs[1]);
  const __m256d kx0 = _mm256_set1_pd(plan.kx[0]);
  const __m256d kx1 = _mm256_set1_pd(plan.kx[1]);
  const __m256d kuv = _mm256_set1_pd(plan.ku);
  const __m256d krv = _mm256_set1_pd(plan.kr);

  int t = trial_begin;
  for (; t + 4 <= trial_end; t += 4) {
    const __m256d p = _mm256_loadu_pd(amplitudes + t);
    __m256d xp0 = _mm256_setzero_pd(), xp1 = _mm256_setzero_pd();
    __m256d xh0 = _mm256_setzero_pd(), xh1 = _mm256_setzero_pd();
    __m256d up = _mm256_setzero_pd();
    __m256d viol = _mm256_setzero_pd();
    int next_f = 0;

    for (int k = 0; k < total_steps; ++k) {
      const __m256d y = xp0;
      if (next_f < n_firing && k == firing_steps[next_f]) {
        _mm256_storeu_pd(errors + static_cast<long>(next_f) * n_trials + t,
                         _mm256_sub_pd(p, y));
        ++next_f;
      }
      const __m256d inn = _mm256_sub_pd(y, xh0);
      const __m256d xc0 = _mm256_add_pd(xh0, _mm256_mul_pd(m0, inn));
      const __m256d xc1 = _mm256_add_pd(xh1, _mm256_mul_pd(m1, inn));

      __m256d u = _mm256_mul_pd(kx0, xc0);
      u = _mm256_add_pd(u, _mm256_mul_pd(kx1, xc1));
      u = _mm256_add_pd(u, _mm256_mul_pd(kuv, up));
      u = _mm256_add_pd(u, _mm256_mul_pd(krv, p));

      for (int i = 0; i < rows; ++i) {
        const auto& g = plan.g[i];
        __m256d yp = _mm256_mul_pd(_mm256_set1_pd(g[0]), xc0);
        yp = _mm256_add_pd(yp, _mm256_mul_pd(_mm256_set1_pd(g[1]), xc1));
        yp = _mm256_add_pd(yp, _mm256_mul_pd(_mm256_set1_pd(g[2]), up));
        yp = _mm256_add_pd(yp, _mm256_mul_pd(_mm256_set1_pd(g[3]), p));
        viol = _mm256_or_pd(viol, _mm256_cmp_pd(yp, lo, _CMP_LT_OQ));
        viol = _mm256_or_pd(viol, _mm256_cmp_pd(yp, hi, _CMP_GT_OQ));
      }

      const __m256d np0 = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(adp0, xp0), _mm256_mul_pd(adp1, xp1)),
          _mm256_mul_pd(bdp0, u));
      const __m256d np1 = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(adp2, xp0), _mm256_mul_pd(adp3, xp1)),
          _mm256_mul_pd(bdp1, u));
      const __m256d nh0 = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(adm0, xc0), _mm256_mul_pd(adm1, xc1)),
          _mm256_mul_pd(bdm0, u));
      const __m256d nh1 = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(adm2, xc0), _mm256_mul_pd(adm3, xc1)),
          _mm256_mul_pd(bdm1, u));
      xp0 = np0;
      xp1 = np1;
      xh0 = nh0;
      xh1 = nh1;
      up = u;
    }
    const int mask = _mm256_movemask_pd(viol);
    for (int j = 0; j < 4; ++j) flags[t + j] = (mask >> j) & 1;
  }
  if (t < trial_end)
    mpc_axis_trials_scalar(plan, amplitudes, n_trials, t, trial_end,
                           firing_steps, n_firing, total_steps, errors, flags);
}

}  // namespace turretsim::kernels::detail

#endif  // __AVX2__
