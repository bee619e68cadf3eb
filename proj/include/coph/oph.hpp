#pragma once
// One-permutation hashing: bin split, first scan, densification.

#include "coph/binary_vector.hpp"
#include "coph/sketch.hpp"

#include <cstdint>
#include <vector>

namespace coph {

// A vector's support split into K equal-width bins. Bin b covers images
// [b*d, (b+1)*d), d = D/K.
struct BinLayout {
    uint32_t D = 0;
    uint32_t K = 0;
    uint32_t d = 0;
    SigmaKind sigma = SigmaKind::Exact;
    uint64_t p = 0; // 2U modulus when sigma == TwoU

    // Per bin: local offsets (in [0, d)) of the occupied positions.
    std::vector<std::vector<uint32_t>> occupied;
    std::vector<uint32_t> nonempty; // ascending bin ids

    // Exact sigma only: pattern[b] = the local offsets of bin b's full
    // preimage, in original-index order. This is the bin-width permutation
    // the split implies for bin b; densification of empty slot k re-hashes
    // its donor through pattern[k].
    std::vector<std::vector<uint32_t>> pattern;

    bool empty_for_vector() const { return nonempty.empty(); }
};

// Split under Exact sigma (stream (seed, Sigma)) or a 2U function (p =
// next prime above D; bin = floor(H(j)*K/p), local offset floor(H(j)*D/p)
// mod d). Requires K >= 1 and K | D; throws std::invalid_argument.
BinLayout bin_split(const BinaryVector& v, uint32_t K, SigmaKind sigma, uint64_t seed);

struct ScanResult {
    std::vector<uint64_t> values;   // size M, EMPTY_SLOT where the read bin was empty
    std::vector<uint32_t> scan_bin; // bin read by each slot
};

// First scan. Slot k (1-based in the shift arithmetic) reads a bin per the
// scan strategy and takes the min of its occupied offsets under the slot's
// bin-width hash, plus the bin's global base offset:
//   OphRaw/OphCopy/OphReDen: the split's own within-bin order for slots
//     <= K, an explicit fresh permutation per slot beyond K or under TwoU;
//   Coph: the k-step rotation of one base permutation, with the shift
//     promoted to k + floor(k*d/D) when M*K > D (periodic schedule).
ScanResult oph_first_scan(const BinLayout& layout, const SchemeDesc& scheme, uint32_t M,
                          uint64_t seed);

// Fill empty slots in place. OphRaw: no-op. OphCopy: copy the donor bin's
// first-scan value (M == K required). OphReDen/Coph: re-hash the donor bin
// with the empty slot's own hash, re-based to the donor bin's offset.
// Donor selection: UniformShared draws candidates from the stream
// (seed, Donor, slot) shared by any vector sketched at this seed, keeping
// the first candidate non-empty for this vector; Rotation walks clockwise
// from the empty bin. Throws if every bin is empty.
void densify(ScanResult& scan, const BinLayout& layout, const SchemeDesc& scheme,
             uint64_t seed);

// bin_split + first scan + densify, packaged with the descriptor.
Sketch oph_sketch(const BinaryVector& v, const SchemeDesc& scheme, uint32_t K, uint32_t M,
                  uint64_t seed);

// Slot shift amount for the circulant schedule (1-based slot), reduced mod d.
uint32_t coph_shift(uint32_t slot1, uint32_t d, uint32_t D, uint32_t K, uint32_t M);

} // namespace coph
