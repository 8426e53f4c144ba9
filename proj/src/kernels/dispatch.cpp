#include "turretsim/kernels/dispatch.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"
#include "turretsim/kernels/grid_mag.hpp"
#include "turretsim/kernels/mpc_trials.hpp"
#include "turretsim/kernels/noise_filter.hpp"

namespace turretsim::kernels {

namespace {

bool have_avx2_compiled() {
#ifdef TURRETSIM_HAVE_AVX2
  return true;
#else
  return false;
#endif
}

Isa detect_isa() {
  if (have_avx2_compiled() && avx2_supported()) {
    if (const char* env = std::getenv("TURRETSIM_ISA")) {
      if (std::strcmp(env, "scalar") == 0) return Isa::kScalar;
    }
    return Isa::kAvx2;
  }
  return Isa::kScalar;
}

Isa& isa_state() {
  static Isa isa = detect_isa();
  return isa;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Isa active_isa() { return isa_state(); }

void force_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !(have_avx2_compiled() && avx2_supported()))
    throw std::runtime_error("force_isa: AVX2 not available");
  isa_state() = isa;
}

const char* isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

void magnitude_squared_grid(const double* num, int num_len, const double* den,
                            int den_len, const double* re, const double* im,
                            double* out, int count) {
#ifdef TURRETSIM_HAVE_AVX2
  if (active_isa() == Isa::kAvx2) {
    detail::magnitude_squared_grid_avx2(num, num_len, den, den_len, re, im,
                                        out, 0, count);
    return;
  }
#endif
  detail::magnitude_squared_grid_scalar(num, num_len, den, den_len, re, im,
                                        out, 0, count);
}

void filter_block(const FilterRealization& sys, const double* w, int width,
                  int record_step, double* out) {
  if (sys.n > kMaxFilterOrder)
    throw std::invalid_argument("filter_block: order too large");
#ifdef TURRETSIM_HAVE_AVX2
  if (active_isa() == Isa::kAvx2) {
    detail::filter_block_avx2(sys, w, width, 0, width, record_step, out);
    return;
  }
#endif
  detail::filter_block_scalar(sys, w, width, 0, width, record_step, out);
}

void mpc_axis_trials(const MpcAxisPlan& plan, const double* amplitudes,
                     int n_trials, int trial_begin, int trial_end,
                     const int* firing_steps, int n_firing, int total_steps,
                     double* errors, unsigned char* flags) {
#ifdef TURRETSIM_HAVE_AVX2
  if (active_isa() == Isa::kAvx2) {
    detail::mpc_axis_trials_avx2(plan, amplitudes, n_trials, trial_begin,
                                 trial_end, firing_steps, n_firing, total_steps,
                                 errors, flags);
    return;
  }
#endif
  detail::mpc_axis_trials_scalar(plan, amplitudes, n_trials, trial_begin,
                                 trial_end, firing_steps, n_firing, total_steps,
                                 errors, flags);
}

}  // namespace turretsim::kernels
