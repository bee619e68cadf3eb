#pragma once
// Exact distribution and variance engine for the binned schemes.
//
// Everything here is exact rational arithmetic (GMP); doubles only appear
// when the caller asks for them. Conventions: D dimensions, K bins of width
// d = D/K, a pair with f union and a intersection positions, J = a/f,
// Jt = (a-1)/(f-1). A bin's conditional profile is (a', f') = intersection /
// union counts inside the bin. M = K is assumed by the variance forms.

#include <cstdint>
#include <gmpxx.h>
#include <vector>

#include "coph/sketch.hpp"

namespace coph {

using BigInt = mpz_class;
using BigRat = mpq_class;

BigInt binom(uint64_t n, uint64_t k); // 0 when k > n

struct TheoryConfig {
    uint32_t D = 0, K = 0, a = 0, f = 0;
    // The variance forms are derived under K*K <= D and f <= (K-1)*D/K.
    // Construction enforces both unless override_hypotheses is set;
    // structural requirements (K | D, 1 <= f <= D, a <= f) always hold.
    bool override_hypotheses = false;

    uint32_t d() const { return D / K; }
    BigRat J() const;  // a/f
    BigRat Jt() const; // (a-1)/(f-1), 0 when f == 1

    static TheoryConfig make(uint32_t D, uint32_t K, uint32_t a, uint32_t f,
                             bool override_hypotheses = false); // throws on violation
};

// Number of ways to place n distinct items into k width-d bins with every
// bin non-empty (positions within bins distinguishable):
//   H(k, n) = sum_j C(d, j) H(k-1, n-j), H(1, n) = C(d, n) for n >= 1,
// and 0 whenever n < k or n > k*d.
BigInt h_count(uint32_t k, uint32_t n, uint32_t d);

// P[N_empty = j] for j = 0..K, for f union positions under a uniform split.
std::vector<BigRat> empty_bin_dist(const TheoryConfig& cfg);

// Conditional joint profile distribution of one (uniformly chosen)
// non-empty bin given m simultaneously non-empty bins:
//   P[a'=x, f'=y | m] = [C(d,y) H(m-1, f-y) / H(m, f)] *
//                        [C(a,x) C(f-a, y-x) / C(f, y)].
struct JointDist {
    uint32_t d = 0, m = 0;
    // p[y][x] for y = 0..d, x = 0..y (zero rows for infeasible y).
    std::vector<std::vector<BigRat>> p;
    BigRat total() const;
};
JointDist cond_joint_dist(const TheoryConfig& cfg, uint32_t m);

// Probability that two hashes of the same width-d bin, generated from two
// circulant rotations of one uniform permutation at shift lag `lag`, both
// collide, for a bin with profile (a', f') placed uniformly. Depends on the
// lag only through gcd(lag, d).
BigRat e_tilde_lag(uint32_t a1, uint32_t f1, uint32_t d, uint32_t lag);
// Average over all ordered pairs of distinct rotations (equivalently over
// lags 1..d-1).
BigRat e_tilde(uint32_t a1, uint32_t f1, uint32_t d);
// Same-bin pair collision probability under two independent permutations
// (the re-randomized densification): (a'/f')^2.
BigRat b_reden(uint32_t a1, uint32_t f1);

// Pairwise collision expectation for slot pairs involving an empty slot,
// given m non-empty bins:
//   E1(m) = (1/m) sum_{a',f'} B(a',f',d) p(a',f'|m) + ((m-1)/m) Jt J
// with B = e_tilde (circulant) or b_reden (independent).
BigRat e1(const TheoryConfig& cfg, uint32_t m);
BigRat e1_reden(const TheoryConfig& cfg, uint32_t m);

// Exact estimator variance at M = K. The circulant form resolves the
// empty-pair expectation per slot-lag (lag l has weight proportional to
// K - l and uses e_tilde_lag at lag l), which is what an exhaustive
// enumeration of the scheme reproduces exactly.
BigRat variance_coph(const TheoryConfig& cfg);
BigRat variance_reden(const TheoryConfig& cfg);

// Independent pipeline oracles.
enum class OracleMode { Exhaustive, MonteCarlo };
struct OracleResult {
    double mean = 0;
    double variance = 0;
    double se_variance = 0; // 0 in exhaustive mode
    BigRat exact_mean;      // exhaustive mode only
    BigRat exact_variance;  // exhaustive mode only
};
// Exhaustive: enumerates union/intersection placements, the bin-width
// permutation (circulant scheme), and donor outcomes, in exact rationals.
// Practical up to D ~ 12. MonteCarlo: drives the production sketching
// pipeline for `trials` paired trials. RoundRobin scan, UniformShared
// donors, M = K.
OracleResult brute_force_variance(const TheoryConfig& cfg, Family family, OracleMode mode,
                                  uint64_t trials = 0, uint64_t seed = 1);

} // namespace coph
