#pragma once
// Long-permutation minwise hashing: the classic K-permutation scheme and the
// circulant reuse family.

#include "coph/binary_vector.hpp"
#include "coph/sketch.hpp"

#include <cstdint>

namespace coph {

// K hashes, each the minimum image of the support under an independent
// uniform permutation of [0, D). Slot k uses the stream (seed, Pi, k).
Sketch minhash_standard(const BinaryVector& v, uint32_t K, uint64_t seed);

// Circulant scheme: scramble the support once (per `sigma`), then slot k
// takes the min under the k-step rotation of a single permutation
// (`pi` = Exact), or under a fresh 2U function (`pi` = TwoU). K <= D
// required so the K rotations are distinct.
//
// sigma = Exact:   uniform permutation, stream (seed, Sigma)
// sigma = TwoU:    rank-compacted 2U relocation (order of H over [0, D))
// sigma = ReusePi: the rotation base itself relocates the support (pi Exact only)
Sketch cminhash(const BinaryVector& v, uint32_t K, uint64_t seed,
                SigmaKind sigma = SigmaKind::Exact, PiKind pi = PiKind::Exact);

} // namespace coph
