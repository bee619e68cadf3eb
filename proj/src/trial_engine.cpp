#include "coph/estimate.hpp"

#include "coph/kernels.hpp"
#include "coph/oph.hpp"
#include "coph/two_universal.hpp"
#include "rank2u.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <thread>

namespace coph {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

bool binned_family(Family f) {
    return f == Family::OphRaw || f == Family::OphCopy || f == Family::OphReDen ||
           f == Family::Coph;
}

// Replays Permutation::random's draw sequence in place.
void fy_into(uint32_t* t, uint32_t n, Rng& rng) {
    for (uint32_t i = 0; i < n; ++i) t[i] = i;
    for (uint32_t i = 0; i + 1 < n; ++i) {
        uint32_t j = uint32_t(i + rng.below(n - i));
        std::swap(t[i], t[j]);
    }
}

struct Plan {
    const BinaryVector* v = nullptr;
    const BinaryVector* w = nullptr;
    std::vector<SchemeDesc> schemes;
    uint32_t D = 0, K = 0, M = 0, d = 0;
    uint64_t seed = 0;
    PairProfile prof;
    double Jd = 0;

    bool any_minhash = false;
    bool any_cm = false;
    bool any_cm_pi_full = false;
    bool any_binned = false;
    bool any_binned_exact = false;
    bool any_binned_2u = false;
    bool any_bin_pi = false;
    bool any_sigma_fy = false;
    bool any_uniform_scan = false;
    bool rel_need[3] = {false, false, false}; // per SigmaKind, cminhash relocations

    std::vector<uint32_t> uni;     // sorted union (minhash path)
    std::vector<uint8_t> uni_int;  // 1 when also in the intersection
    std::vector<uint32_t> cm_add;  // per slot, long rotation gather offset
    std::vector<uint32_t> coph_add;

    bool exact_pairs = true;
    size_t n_pairs = 0;
};

struct Layout {
    std::vector<uint32_t> cnt, start, fill, vals, minoff;

    void build_exact(const std::vector<uint32_t>& sup, const uint32_t* sigma, uint32_t K,
                     uint32_t d) {
        begin(sup.size(), K);
        for (uint32_t s : sup) ++cnt[sigma[s] / d];
        place(K);
        for (uint32_t s : sup) {
            uint32_t img = sigma[s];
            put(img / d, img % d);
        }
    }
    void build_2u(const std::vector<uint32_t>& sup, const TwoUniversalHash& h, uint32_t D,
                  uint32_t K, uint32_t d) {
        begin(sup.size(), K);
        for (uint32_t s : sup) ++cnt[uint32_t((u128)h(s) * D / h.p) / d];
        place(K);
        for (uint32_t s : sup) {
            uint32_t q = uint32_t((u128)h(s) * D / h.p);
            put(q / d, q % d);
        }
    }
    const uint32_t* bin(uint32_t b) const { return vals.data() + start[b]; }

  private:
    void begin(size_t f, uint32_t K) {
        cnt.assign(K, 0);
        start.resize(K + 1);
        fill.resize(K);
        vals.resize(f);
        minoff.assign(K, UINT32_MAX);
    }
    void place(uint32_t K) {
        start[0] = 0;
        for (uint32_t b = 0; b < K; ++b) start[b + 1] = start[b] + cnt[b];
        std::copy(start.begin(), start.begin() + K, fill.begin());
    }
    void put(uint32_t b, uint32_t off) {
        vals[fill[b]++] = off;
        minoff[b] = std::min(minoff[b], off);
    }
};

struct Workspace {
    std::vector<uint32_t> sigma, pi_full, bin_pi;
    std::vector<uint32_t> relv[3], relw[3];
    bool rel_built[3] = {};
    Layout Lv, Lw, Gv, Gw;
    std::vector<uint32_t> pattern; // K*d, exact-split implicit slot tables
    bool pattern_built = false;
    std::vector<uint32_t> expl; // M*d explicit slot tables
    std::vector<uint8_t> expl_drawn;
    std::vector<uint32_t> scan_bins;
    std::vector<uint64_t> skv, skw;
    std::vector<uint32_t> ov, stamp; // sparse Fisher-Yates pool
    uint32_t epoch = 0;

    void init(const Plan& P) {
        if (P.any_sigma_fy) sigma.resize(P.D);
        if (P.any_cm_pi_full) pi_full.resize(P.D);
        if (P.any_bin_pi) bin_pi.resize(P.d);
        if (P.any_binned) {
            pattern.resize(size_t(P.K) * P.d);
            expl.resize(size_t(P.M) * P.d);
            expl_drawn.resize(P.M);
            skv.resize(P.M);
            skw.resize(P.M);
        }
        if (P.any_uniform_scan) scan_bins.resize(P.M);
        if (P.any_minhash) {
            ov.resize(P.D);
            stamp.assign(P.D, 0);
        }
    }
};

struct Accum {
    std::vector<std::array<u128, 4>> S;
    std::vector<Moments> raw_mom;
    std::vector<i128> T1;
    std::vector<u128> T2;
    std::vector<Moments> pair_mom;

    void init(size_t ns, size_t np) {
        S.assign(ns, {});
        raw_mom.assign(ns, {});
        T1.assign(np, 0);
        T2.assign(np, 0);
        pair_mom.assign(np, {});
    }
    void merge(const Accum& o) {
        for (size_t i = 0; i < S.size(); ++i)
            for (int j = 0; j < 4; ++j) S[i][j] += o.S[i][j];
        for (size_t i = 0; i < raw_mom.size(); ++i) raw_mom[i].merge(o.raw_mom[i]);
        for (size_t q = 0; q < T1.size(); ++q) {
            T1[q] += o.T1[q];
            T2[q] += o.T2[q];
            pair_mom[q].merge(o.pair_mom[q]);
        }
    }
};

uint32_t pick_donor(const Layout& L, const SchemeDesc& sch, uint32_t K, uint64_t tseed,
                    uint32_t k0, uint32_t from_bin) {
    if (sch.donor == DonorStrategy::UniformShared) {
        Rng rng(stream_key(tseed, Stream::Donor, {k0}));
        uint32_t c;
        do c = uint32_t(rng.below(K));
        while (L.cnt[c] == 0);
        return c;
    }
    uint32_t b = from_bin;
    do b = (b + 1) % K;
    while (L.cnt[b] == 0);
    return b;
}

const uint32_t* ensure_expl(const Plan& P, Workspace& W, uint64_t tseed, uint32_t k0) {
    uint32_t* t = W.expl.data() + size_t(k0) * P.d;
    if (!W.expl_drawn[k0]) {
        Rng rng(stream_key(tseed, Stream::Pi, {k0}));
        fy_into(t, P.d, rng);
        W.expl_drawn[k0] = 1;
    }
    return t;
}

void ensure_pattern(const Plan& P, Workspace& W) {
    if (W.pattern_built) return;
    std::vector<uint32_t>& fill = W.Lv.fill; // scratch, rebuilt next trial anyway
    fill.assign(P.K, 0);
    for (uint32_t j = 0; j < P.D; ++j) {
        uint32_t img = W.sigma[j];
        uint32_t b = img / P.d;
        W.pattern[size_t(b) * P.d + fill[b]++] = img % P.d;
    }
    W.pattern_built = true;
}

void binned_sketch(const Plan& P, Workspace& W, const SchemeDesc& sch, const Layout& L,
                   bool exact_split, uint64_t tseed, uint64_t* out) {
    const auto& k = kern::ops();
    const uint32_t K = P.K, d = P.d, M = P.M;
    for (uint32_t k0 = 0; k0 < M; ++k0) {
        uint32_t b = sch.scan == ScanStrategy::RoundRobin ? k0 % K : W.scan_bins[k0];
        if (L.cnt[b] == 0) {
            out[k0] = EMPTY_SLOT;
            continue;
        }
        uint32_t m;
        if (sch.family == Family::Coph)
            m = k.min_shift_gather_u32(W.bin_pi.data(), d, P.coph_add[k0], L.bin(b),
                                       L.cnt[b]);
        else if (exact_split && sch.scan == ScanStrategy::RoundRobin && k0 < K)
            m = L.minoff[b];
        else
            m = k.min_shift_gather_u32(ensure_expl(P, W, tseed, k0), d, 0, L.bin(b),
                                       L.cnt[b]);
        out[k0] = uint64_t(b) * d + m;
    }
    if (sch.family == Family::OphRaw) return;
    for (uint32_t k0 = 0; k0 < M; ++k0) {
        if (out[k0] != EMPTY_SLOT) continue;
        uint32_t from = sch.scan == ScanStrategy::RoundRobin ? k0 % K : W.scan_bins[k0];
        uint32_t donor = pick_donor(L, sch, K, tseed, k0, from);
        if (sch.family == Family::OphCopy) {
            out[k0] = out[donor];
            continue;
        }
        uint32_t m;
        if (sch.family == Family::Coph)
            m = k.min_shift_gather_u32(W.bin_pi.data(), d, P.coph_add[k0], L.bin(donor),
                                       L.cnt[donor]);
        else if (exact_split && sch.scan == ScanStrategy::RoundRobin && k0 < K) {
            ensure_pattern(P, W);
            m = k.min_shift_gather_u32(W.pattern.data() + size_t(k0) * d, d, 0,
                                       L.bin(donor), L.cnt[donor]);
        } else {
            m = k.min_shift_gather_u32(ensure_expl(P, W, tseed, k0), d, 0, L.bin(donor),
                                       L.cnt[donor]);
        }
        out[k0] = uint64_t(donor) * d + m;
    }
}

void build_rel(const Plan& P, Workspace& W, SigmaKind sigma, uint64_t tseed) {
    int s = int(sigma);
    if (W.rel_built[s]) return;
    auto& rv = W.relv[s];
    auto& rw = W.relw[s];
    rv.resize(P.v->support.size());
    rw.resize(P.w->support.size());
    switch (sigma) {
    case SigmaKind::Exact:
        for (size_t i = 0; i < rv.size(); ++i) rv[i] = W.sigma[P.v->support[i]];
        for (size_t i = 0; i < rw.size(); ++i) rw[i] = W.sigma[P.w->support[i]];
        break;
    case SigmaKind::TwoU: {
        Rng rng(stream_key(tseed, Stream::Sigma));
        TwoUniversalHash h = TwoUniversalHash::random(P.D, rng);
        for (size_t i = 0; i < rv.size(); ++i)
            rv[i] = uint32_t(detail::count_hash_below(h.a, h.b, h.p, P.D, h(P.v->support[i])));
        for (size_t i = 0; i < rw.size(); ++i)
            rw[i] = uint32_t(detail::count_hash_below(h.a, h.b, h.p, P.D, h(P.w->support[i])));
        break;
    }
    case SigmaKind::ReusePi:
        for (size_t i = 0; i < rv.size(); ++i) rv[i] = W.pi_full[P.v->support[i]];
        for (size_t i = 0; i < rw.size(); ++i) rw[i] = W.pi_full[P.w->support[i]];
        break;
    }
    W.rel_built[s] = true;
}

// Per-trial estimates as (numerator, denominator) slot-count pairs.
void run_one_trial(const Plan& P, Workspace& W, uint64_t tseed,
                   std::pair<uint64_t, uint64_t>* est) {
    const auto& k = kern::ops();
    if (P.any_sigma_fy) {
        Rng rng(stream_key(tseed, Stream::Sigma));
        fy_into(W.sigma.data(), P.D, rng);
    }
    if (P.any_bin_pi) {
        Rng rng(stream_key(tseed, Stream::Pi));
        fy_into(W.bin_pi.data(), P.d, rng);
    }
    if (P.any_cm_pi_full) {
        Rng rng(stream_key(tseed, Stream::Pi));
        fy_into(W.pi_full.data(), P.D, rng);
    }
    if (P.any_binned_exact) {
        W.Lv.build_exact(P.v->support, W.sigma.data(), P.K, P.d);
        W.Lw.build_exact(P.w->support, W.sigma.data(), P.K, P.d);
        W.pattern_built = false;
    }
    if (P.any_binned_2u) {
        Rng rng(stream_key(tseed, Stream::Sigma));
        TwoUniversalHash h = TwoUniversalHash::random(P.D, rng);
        W.Gv.build_2u(P.v->support, h, P.D, P.K, P.d);
        W.Gw.build_2u(P.w->support, h, P.D, P.K, P.d);
    }
    if (P.any_uniform_scan) {
        Rng rng(stream_key(tseed, Stream::Scan));
        for (uint32_t k0 = 0; k0 < P.M; ++k0) W.scan_bins[k0] = uint32_t(rng.below(P.K));
    }
    if (P.any_binned) std::memset(W.expl_drawn.data(), 0, W.expl_drawn.size());
    W.rel_built[0] = W.rel_built[1] = W.rel_built[2] = false;

    for (size_t i = 0; i < P.schemes.size(); ++i) {
        const SchemeDesc& sch = P.schemes[i];
        if (sch.family == Family::MinHash) {
            const size_t u = P.uni.size();
            uint64_t c = 0;
            for (uint32_t k0 = 0; k0 < P.M; ++k0) {
                if (++W.epoch == 0) {
                    std::fill(W.stamp.begin(), W.stamp.end(), 0u);
                    W.epoch = 1;
                }
                Rng rng(stream_key(tseed, Stream::Pi, {k0}));
                uint32_t best = UINT32_MAX;
                uint8_t best_int = 0;
                for (size_t t = 0; t < u; ++t) {
                    uint32_t j = uint32_t(t + rng.below(P.D - t));
                    uint32_t val = W.stamp[j] == W.epoch ? W.ov[j] : j;
                    uint32_t back = W.stamp[t] == W.epoch ? W.ov[t] : uint32_t(t);
                    W.ov[j] = back;
                    W.stamp[j] = W.epoch;
                    if (val < best) {
                        best = val;
                        best_int = P.uni_int[t];
                    }
                }
                c += best_int;
            }
            est[i] = {c, P.M};
        } else if (sch.family == Family::CMinHash) {
            build_rel(P, W, sch.sigma, tseed);
            const auto& rv = W.relv[int(sch.sigma)];
            const auto& rw = W.relw[int(sch.sigma)];
            uint64_t c = 0;
            if (sch.pi == PiKind::Exact) {
                for (uint32_t k0 = 0; k0 < P.M; ++k0) {
                    uint32_t hv = k.min_shift_gather_u32(W.pi_full.data(), P.D,
                                                         P.cm_add[k0], rv.data(), rv.size());
                    uint32_t hw = k.min_shift_gather_u32(W.pi_full.data(), P.D,
                                                         P.cm_add[k0], rw.data(), rw.size());
                    c += (hv == hw);
                }
            } else {
                for (uint32_t k0 = 0; k0 < P.M; ++k0) {
                    Rng rng(stream_key(tseed, Stream::Hash2U, {k0}));
                    TwoUniversalHash h = TwoUniversalHash::random(P.D, rng);
                    uint32_t hv = k.affine_mod_min_u32(h.a, h.b, h.p, rv.data(), rv.size());
                    uint32_t hw = k.affine_mod_min_u32(h.a, h.b, h.p, rw.data(), rw.size());
                    c += (hv == hw);
                }
            }
            est[i] = {c, P.M};
        } else {
            bool exact_split = sch.sigma == SigmaKind::Exact;
            const Layout& Lv = exact_split ? W.Lv : W.Gv;
            const Layout& Lw = exact_split ? W.Lw : W.Gw;
            binned_sketch(P, W, sch, Lv, exact_split, tseed, W.skv.data());
            binned_sketch(P, W, sch, Lw, exact_split, tseed, W.skw.data());
            if (sch.family == Family::OphRaw) {
                size_t both = 0, eq = 0;
                k.count_eq_valid_u64(W.skv.data(), W.skw.data(), P.M, EMPTY_SLOT, &both,
                                     &eq);
                if (both == 0)
                    throw std::runtime_error(
                        "run_trials: oph-raw estimator undefined (no slot valid on both sides)");
                est[i] = {eq, both};
            } else {
                est[i] = {k.count_eq_u64(W.skv.data(), W.skw.data(), P.M), P.M};
            }
        }
    }
}

void worker(const Plan& P, uint64_t lo, uint64_t hi, Accum& acc) {
    const size_t ns = P.schemes.size();
    Workspace W;
    W.init(P);
    acc.init(ns, P.n_pairs);
    std::vector<std::pair<uint64_t, uint64_t>> est(ns);
    std::vector<bool> raw(ns);
    for (size_t i = 0; i < ns; ++i) raw[i] = P.schemes[i].family == Family::OphRaw;
    const uint64_t f = P.prof.f, a = P.prof.a, M = P.M;

    for (uint64_t t = lo; t < hi; ++t) {
        uint64_t tseed = stream_key(P.seed, Stream::Trial, {t});
        run_one_trial(P, W, tseed, est.data());
        for (size_t i = 0; i < ns; ++i) {
            if (raw[i]) {
                acc.raw_mom[i].add(double(est[i].first) / double(est[i].second));
            } else {
                u128 c = est[i].first;
                u128 c2 = c * c;
                acc.S[i][0] += c;
                acc.S[i][1] += c2;
                acc.S[i][2] += c2 * c;
                acc.S[i][3] += c2 * c2;
            }
        }
        size_t q = 0;
        for (size_t i = 0; i < ns; ++i) {
            for (size_t j = i + 1; j < ns; ++j, ++q) {
                if (P.exact_pairs && !raw[i] && !raw[j]) {
                    i128 na = i128(est[i].first) * f - i128(a) * M;
                    i128 nb = i128(est[j].first) * f - i128(a) * M;
                    i128 diff = nb * nb - na * na;
                    acc.T1[q] += diff;
                    acc.T2[q] += u128(diff < 0 ? -diff : diff) * u128(diff < 0 ? -diff : diff);
                } else {
                    double ea = double(est[i].first) / double(est[i].second) - P.Jd;
                    double eb = double(est[j].first) / double(est[j].second) - P.Jd;
                    acc.pair_mom[q].add(eb * eb - ea * ea);
                }
            }
        }
    }
}

} // namespace

TrialRun run_trials(const BinaryVector& v, const BinaryVector& w,
                    const std::vector<SchemeDesc>& schemes, uint32_t K, uint32_t M,
                    uint64_t n_trials, uint64_t seed, unsigned jobs) {
    if (schemes.empty()) throw std::invalid_argument("run_trials: no schemes");
    if (n_trials == 0) throw std::invalid_argument("run_trials: n_trials must be positive");
    if (M == 0) throw std::invalid_argument("run_trials: M must be positive");
    if (v.support.empty() || w.support.empty())
        throw std::invalid_argument("run_trials: empty support");

    Plan P;
    P.v = &v;
    P.w = &w;
    P.schemes = schemes;
    P.D = v.dim;
    P.K = K;
    P.M = M;
    P.seed = seed;
    P.prof = profile_of(v, w); // validates matching dims
    if (P.prof.f == 0) throw std::invalid_argument("run_trials: empty union");
    P.Jd = P.prof.jaccard().value();

    for (const SchemeDesc& s : schemes) {
        if (s.family == Family::MinHash) {
            P.any_minhash = true;
        } else if (s.family == Family::CMinHash) {
            if (M > P.D)
                throw std::invalid_argument("run_trials: M <= D required for rotations");
            if (s.sigma == SigmaKind::ReusePi && s.pi != PiKind::Exact)
                throw std::invalid_argument("run_trials: invalid cminhash variant");
            if (s.sigma == SigmaKind::TwoU && s.pi == PiKind::TwoU)
                throw std::invalid_argument("run_trials: invalid cminhash variant");
            P.any_cm = true;
            P.rel_need[int(s.sigma)] = true;
            if (s.pi == PiKind::Exact) P.any_cm_pi_full = true;
            if (s.sigma == SigmaKind::Exact) P.any_sigma_fy = true;
        } else if (binned_family(s.family)) {
            if (K == 0 || P.D % K != 0)
                throw std::invalid_argument("run_trials: K must divide D");
            if (s.pi != PiKind::Exact || s.sigma == SigmaKind::ReusePi)
                throw std::invalid_argument("run_trials: invalid binned scheme");
            if (s.family == Family::OphCopy &&
                (M != K || s.scan != ScanStrategy::RoundRobin))
                throw std::invalid_argument("run_trials: copying needs M == K round-robin");
            P.any_binned = true;
            if (s.sigma == SigmaKind::Exact) {
                P.any_binned_exact = true;
                P.any_sigma_fy = true;
            } else {
                P.any_binned_2u = true;
            }
            if (s.family == Family::Coph) P.any_bin_pi = true;
            if (s.scan == ScanStrategy::UniformRandom) P.any_uniform_scan = true;
        }
    }
    if (P.any_binned) P.d = P.D / K;

    if (P.any_minhash) {
        P.uni.reserve(P.prof.f);
        P.uni_int.reserve(P.prof.f);
        std::set_union(v.support.begin(), v.support.end(), w.support.begin(),
                       w.support.end(), std::back_inserter(P.uni));
        std::vector<uint32_t> inter;
        std::set_intersection(v.support.begin(), v.support.end(), w.support.begin(),
                              w.support.end(), std::back_inserter(inter));
        P.uni_int.assign(P.uni.size(), 0);
        size_t j = 0;
        for (size_t i = 0; i < P.uni.size(); ++i)
            if (j < inter.size() && P.uni[i] == inter[j]) {
                P.uni_int[i] = 1;
                ++j;
            }
    }
    if (P.any_cm_pi_full) {
        P.cm_add.resize(M);
        for (uint32_t k0 = 0; k0 < M; ++k0)
            P.cm_add[k0] = (P.D - (k0 + 1) % P.D) % P.D;
    }
    if (P.any_bin_pi) {
        P.coph_add.resize(M);
        for (uint32_t k0 = 0; k0 < M; ++k0)
            P.coph_add[k0] = (P.d - coph_shift(k0 + 1, P.d, P.D, K, M)) % P.d;
    }

    if (4.0L * std::log2l((long double)M) + std::log2l((long double)n_trials) >= 126.0L)
        throw std::invalid_argument("run_trials: M^4 * n_trials overflows the accumulator");
    P.exact_pairs = 4.0L * std::log2l((long double)P.prof.f * M) +
                        std::log2l((long double)n_trials) <
                    120.0L;
    const size_t ns = schemes.size();
    P.n_pairs = ns * (ns - 1) / 2;

    unsigned nw = jobs == 0 ? 1 : jobs;
    nw = unsigned(std::min<uint64_t>(nw, n_trials));
    std::vector<Accum> accs(nw);
    if (nw <= 1) {
        worker(P, 0, n_trials, accs[0]);
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errs(nw);
        uint64_t base = n_trials / nw, rem = n_trials % nw;
        uint64_t lo = 0;
        for (unsigned i = 0; i < nw; ++i) {
            uint64_t hi = lo + base + (i < rem ? 1 : 0);
            threads.emplace_back([&, i, lo, hi] {
                try {
                    worker(P, lo, hi, accs[i]);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            });
            lo = hi;
        }
        for (auto& t : threads) t.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
        for (unsigned i = 1; i < nw; ++i) accs[0].merge(accs[i]);
    }
    const Accum& A = accs[0];

    TrialRun out;
    out.stats.resize(ns);
    const long double n = (long double)n_trials;
    for (size_t i = 0; i < ns; ++i) {
        TrialStats& st = out.stats[i];
        st.scheme = schemes[i].name();
        st.J = P.Jd;
        st.D = P.D;
        st.f = P.prof.f;
        st.K = K;
        st.M = M;
        st.n_trials = n_trials;
        if (schemes[i].family == Family::OphRaw) {
            const Moments& mo = A.raw_mom[i];
            st.mean = mo.mean();
            st.variance = mo.variance();
            st.stderr_mean = mo.se_mean();
            st.se_variance = mo.se_variance();
        } else {
            long double S1 = (long double)A.S[i][0], S2 = (long double)A.S[i][1];
            long double S3 = (long double)A.S[i][2], S4 = (long double)A.S[i][3];
            long double Ml = (long double)M;
            long double C2 = S2 - S1 * S1 / n;
            long double C3 = S3 - 3.0L * S2 * S1 / n + 2.0L * S1 * S1 * S1 / (n * n);
            long double C4 = S4 - 4.0L * S3 * S1 / n + 6.0L * S2 * S1 * S1 / (n * n) -
                             3.0L * S1 * S1 * S1 * S1 / (n * n * n);
            long double m2 = C2 / (Ml * Ml);
            long double m4 = C4 / (Ml * Ml * Ml * Ml);
            (void)C3;
            st.mean = double(S1 / (n * Ml));
            st.variance = double(m2 / n);
            st.stderr_mean = n > 1 ? double(sqrtl(m2 / (n * (n - 1.0L)))) : 0.0;
            long double spread = m4 / n - (m2 / n) * (m2 / n);
            st.se_variance = spread > 0 ? double(sqrtl(spread / n)) : 0.0;
        }
        st.bias = st.mean - P.Jd;
        st.mse = st.variance + st.bias * st.bias;
    }
    out.pairs.resize(P.n_pairs);
    size_t q = 0;
    for (size_t i = 0; i < ns; ++i) {
        for (size_t j = i + 1; j < ns; ++j, ++q) {
            PairedDiff& pd = out.pairs[q];
            pd.scheme_a = schemes[i].name();
            pd.scheme_b = schemes[j].name();
            bool raw_i = schemes[i].family == Family::OphRaw;
            bool raw_j = schemes[j].family == Family::OphRaw;
            if (P.exact_pairs && !raw_i && !raw_j) {
                long double scale = (long double)P.prof.f * M;
                scale *= scale;
                long double t1 = (long double)A.T1[q];
                long double t2 = (long double)A.T2[q];
                pd.diff.n = n_trials;
                pd.diff.m1 = double(t1 / n / scale);
                pd.diff.m2 = double((t2 - t1 * t1 / n) / (scale * scale));
            } else {
                pd.diff = A.pair_mom[q];
            }
        }
    }
    return out;
}

} // namespace coph
