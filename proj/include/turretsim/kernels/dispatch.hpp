#pragma once

namespace turretsim::kernels {

enum class Isa { kScalar, kAvx2 };

// True when the running CPU supports AVX2.
bool avx2_supported();

// ISA used by the kernel entry points. Defaults to the best supported one;
// the TURRETSIM_ISA environment variable ("scalar" or "avx2") overrides it.
Isa active_isa();

// Force a specific ISA (used by the equivalence tests). Throws
// std::runtime_error when the requested ISA is not supported.
void force_isa(Isa isa);

const char* isa_name(Isa isa);

}  // namespace turretsim::kernels
