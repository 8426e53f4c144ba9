#pragma once

// Internal per-ISA kernel entry points. Each AVX2 variant executes the same
// per-element operation sequence as its scalar twin (no FMA contraction), so
// outputs are bit-identical across ISAs; the equivalence tests assert this.

#include "turretsim/kernels/mpc_trials.hpp"
#include "turretsim/kernels/noise_filter.hpp"

namespace turretsim::kernels::detail {

void magnitude_squared_grid_scalar(const double* num, int num_len,
                                   const double* den, int den_len,
                                   const double* re, const double* im,
                                   double* out, int begin, int end);

void filter_block_scalar(const FilterRealization& sys, const double* w,
                         int width, int lane_begin, int lane_end,
                         int record_step, double* out);

void mpc_axis_trials_scalar(const MpcAxisPlan& plan, const double* amplitudes,
                            int n_trials, int trial_begin, int trial_end,
                            const int* firing_steps, int n_firing,
                            int total_steps, double* errors,
                            unsigned char* flags);

void magnitude_squared_grid_avx2(const double* num, int num_len,
                                 const double* den, int den_len,
                                 const double* re, const double* im,
                                 double* out, int begin, int end);

void filter_block_avx2(const FilterRealization& sys, const double* w,
                       int width, int lane_begin, int lane_end,
                       int record_step, double* out);

void mpc_axis_trials_avx2(const MpcAxisPlan& plan, const double* amplitudes,
                          int n_trials, int trial_begin, int trial_end,
                          const int* firing_steps, int n_firing,
                          int total_steps, double* errors,
                          unsigned char* flags);

}  // namespace turretsim::kernels::detail
