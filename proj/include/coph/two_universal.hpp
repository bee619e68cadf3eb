#pragma once
// 2-universal hashing H(x) = (a*x + b) mod p with p prime, a odd.

#include "coph/rng.hpp"

#include <cstdint>

namespace coph {

bool is_prime_u64(uint64_t n);
// Smallest prime strictly greater than n.
uint64_t next_prime_above(uint64_t n);

struct TwoUniversalHash {
    uint64_t a = 1; // odd, in [1, p)
    uint64_t b = 0; // in [0, p)
    uint64_t p = 2; // prime, > the hashed domain size

    uint64_t operator()(uint64_t x) const { return (a * x + b) % p; }

    // p = next_prime_above(dim); a uniform over the odd values of [1, p),
    // b uniform over [0, p). Injective on [0, dim) since dim < p.
    static TwoUniversalHash random(uint64_t dim, Rng& rng);
    // Validating constructor for explicit parameters.
    static TwoUniversalHash make(uint64_t a, uint64_t b, uint64_t p, uint64_t dim);
};

} // namespace coph
