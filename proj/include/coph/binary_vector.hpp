#pragma once
// Sparse binary vectors over [0, dim) and exact Jaccard similarity.

#include <cstdint>
#include <utility>
#include <vector>

namespace coph {

struct BinaryVector {
    uint32_t dim = 0;
    std::vector<uint32_t> support; // sorted, unique, all < dim
};

// Reduced fraction with a float view.
struct Ratio {
    uint64_t num = 0;
    uint64_t den = 1;
    double value() const { return den ? double(num) / double(den) : 0.0; }
};

struct PairProfile {
    uint32_t dim = 0;
    uint32_t f = 0; // |union|
    uint32_t a = 0; // |intersection|
    Ratio jaccard() const;
};

// Validates and normalizes: sorts, checks bounds and duplicates.
BinaryVector make_vector(uint32_t dim, std::vector<uint32_t> support);

PairProfile profile_of(const BinaryVector& v, const BinaryVector& w);

// a / f as a reduced rational. Throws std::invalid_argument on dimension
// mismatch or empty union.
Ratio jaccard_exact(const BinaryVector& v, const BinaryVector& w);

// Deterministic synthetic pair with |union| = f, |intersection| = a on a
// uniformly scattered union; the f - a symmetric-difference positions are
// split alternately between v and w (v gets the extra one when f - a is
// odd). Throws when a > f or f > dim.
std::pair<BinaryVector, BinaryVector> make_pair_vectors(uint32_t dim, uint32_t f, uint32_t a,
                                                        uint64_t seed);

} // namespace coph
