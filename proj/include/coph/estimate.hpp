#pragma once
// Jaccard estimation from sketches and the Monte-Carlo trial harness.

#include "coph/binary_vector.hpp"
#include "coph/sketch.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace coph {

// Single-pass central moments up to order 4, mergeable across partitions.
struct Moments {
    uint64_t n = 0;
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0; // m2..m4 are centered power sums

    void add(double x);
    void merge(const Moments& o);
    double mean() const { return m1; }
    double variance() const { return n > 1 ? m2 / double(n) : 0.0; } // population
    double fourth() const { return n > 0 ? m4 / double(n) : 0.0; }
    // Standard error of the sample mean.
    double se_mean() const;
    // Large-n standard error of the sample variance: sqrt((m4 - var^2)/n).
    double se_variance() const;
};

// Collision-fraction estimator. Sketches must agree on scheme descriptor,
// D, K, M, p and seed; throws std::invalid_argument otherwise. For oph-raw
// sketches, slot pairs with both sides empty are excluded and the
// denominator is the count of slots where both sides are non-empty (throws
// when no usable slot remains). Other schemes use all M slots.
double estimate_jaccard(const Sketch& sv, const Sketch& sw);

struct TrialStats {
    std::string scheme;
    double J = 0; // exact a/f of the pair
    uint32_t D = 0, f = 0, K = 0, M = 0;
    uint64_t n_trials = 0;
    double mean = 0, bias = 0, variance = 0, mse = 0, stderr_mean = 0;
    // Extra diagnostics for tolerance checks.
    double se_variance = 0;

    static const char* csv_header(); // scheme,J,D,f,K,M,n_trials,mean,bias,variance,mse,stderr
    std::string csv_row() const;
};

// Paired squared-error difference between two schemes sharing per-trial
// randomness: diff accumulates err_b^2 - err_a^2 (positive mean = scheme a
// has the lower MSE).
struct PairedDiff {
    std::string scheme_a, scheme_b;
    Moments diff;
};

// Runs n_trials independent trials of every scheme on the pair (v, w).
// Within a trial all schemes share the split/scan/donor streams (paired
// comparison); across trials all randomness is fresh, derived from
// (seed, Trial, t). M is the hash count for every family; K (bin count)
// is ignored by the long-permutation families. `jobs` > 1 partitions
// trials across threads; results are independent of the partitioning
// (bitwise for the fixed-denominator estimators, up to last-bit rounding
// for oph-raw whose denominator varies by trial).
struct TrialRun {
    std::vector<TrialStats> stats;       // one per scheme, input order
    std::vector<PairedDiff> pairs;       // all unordered scheme pairs, input order
};
TrialRun run_trials(const BinaryVector& v, const BinaryVector& w,
                    const std::vector<SchemeDesc>& schemes, uint32_t K, uint32_t M,
                    uint64_t n_trials, uint64_t seed, unsigned jobs = 1);

} // namespace coph
