#pragma once
// Shared between the per-architecture kernel translation units and the
// dispatcher. Unavailable architectures report false and fall back to the
// scalar table.

#include "coph/kernels.hpp"

namespace coph::kern {

bool avx2_available();
const Ops& avx2_ops();

bool neon_available();
const Ops& neon_ops();

} // namespace coph::kern
