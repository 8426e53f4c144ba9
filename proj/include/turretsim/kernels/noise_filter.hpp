#pragma once

namespace turretsim::kernels {

inline constexpr int kMaxFilterOrder = 8;

// Dense SISO realization used by the batched white-noise runs.
struct FilterRealization {
  int n = 0;
  double a[kMaxFilterOrder * kMaxFilterOrder] = {};  // row-major
  double b[kMaxFilterOrder] = {};
  double c[kMaxFilterOrder] = {};
  double d = 0.0;
};

// Run `width` independent trials in lockstep from zero state for
// record_step+1 steps. Input layout is lane-major: w[k * width + lane].
// out[lane] receives the output at record_step.
void filter_block(const FilterRealization& sys, const double* w, int width,
                  int record_step, double* out);

}  // namespace turretsim::kernels
