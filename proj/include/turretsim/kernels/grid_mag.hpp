#pragma once

namespace turretsim::kernels {

// out[i] = |num(z_i) / den(z_i)|^2 with z_i = re[i] + j*im[i], both
// polynomials real with coefficients highest degree first. The scalar and
// AVX2 variants perform the identical per-point operation sequence and
// produce bit-identical results.
void magnitude_squared_grid(const double* num, int num_len, const double* den,
                            int den_len, const double* re, const double* im,
                            double* out, int count);

}  // namespace turretsim::kernels
