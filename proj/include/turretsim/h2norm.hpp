#pragma once

#include "turretsim/transfer_function.hpp"

namespace turretsim {

// Discrete H2 norm sqrt( 1/(2*pi) * int_{-wN}^{wN} |H(e^{jwh})|^2 dw ) with
// wN = pi/h. Composite Simpson quadrature starting at 2^14 intervals with
// doubling refinement until two successive estimates agree to 1e-6 relative.
// Throws std::invalid_argument for non-discrete or unstable systems and
// std::runtime_error when the quadrature fails to converge.
double h2_norm_discrete(const TransferFunction& dtf);

// All denominator roots strictly inside the unit circle (computed via the
// companion-matrix eigenvalues).
bool is_stable_discrete(const TransferFunction& dtf);

}  // namespace turretsim
