#include "coph/theory.hpp"

#include "coph/binary_vector.hpp"
#include "coph/estimate.hpp"
#include "coph/oph.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace coph {

BigInt binom(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, (unsigned long)k);
    return r;
}

BigRat TheoryConfig::J() const {
    BigRat r(a, f);
    r.canonicalize();
    return r;
}

BigRat TheoryConfig::Jt() const {
    if (f == 1) return 0;
    BigRat r(long(a) - 1, long(f) - 1);
    r.canonicalize();
    return r;
}

TheoryConfig TheoryConfig::make(uint32_t D, uint32_t K, uint32_t a, uint32_t f,
                                bool override_hypotheses) {
    if (K == 0 || D == 0 || D % K != 0)
        throw std::invalid_argument("theory: K must divide D");
    if (f == 0 || f > D) throw std::invalid_argument("theory: 1 <= f <= D required");
    if (a > f) throw std::invalid_argument("theory: a <= f required");
    if (!override_hypotheses) {
        if (uint64_t(K) * K > D)
            throw std::invalid_argument("theory: closed forms need K^2 <= D");
        if (K >= 2 && uint64_t(f) * K > uint64_t(K - 1) * D)
            throw std::invalid_argument("theory: closed forms need f <= (K-1)*D/K");
    }
    TheoryConfig cfg;
    cfg.D = D;
    cfg.K = K;
    cfg.a = a;
    cfg.f = f;
    cfg.override_hypotheses = override_hypotheses;
    return cfg;
}

BigInt h_count(uint32_t k, uint32_t n, uint32_t d) {
    if (k >= (1u << 12) || d >= (1u << 20))
        throw std::invalid_argument("h_count: parameters too large");
    if (k == 0) return n == 0 ? 1 : 0;
    if (n < k || uint64_t(n) > uint64_t(k) * d) return 0;
    if (k == 1) return binom(d, n);
    thread_local std::map<uint64_t, BigInt> memo;
    uint64_t key = (uint64_t(d) << 44) | (uint64_t(k) << 32) | n;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    BigInt sum = 0;
    uint32_t jmax = std::min(d, n - k + 1);
    for (uint32_t j = 1; j <= jmax; ++j) sum += binom(d, j) * h_count(k - 1, n - j, d);
    memo.emplace(key, sum);
    return sum;
}

std::vector<BigRat> empty_bin_dist(const TheoryConfig& cfg) {
    std::vector<BigRat> dist(cfg.K + 1);
    BigInt denom = binom(cfg.D, cfg.f);
    for (uint32_t j = 0; j <= cfg.K; ++j) {
        BigRat p(binom(cfg.K, j) * h_count(cfg.K - j, cfg.f, cfg.d()), denom);
        p.canonicalize();
        dist[j] = p;
    }
    return dist;
}

BigRat JointDist::total() const {
    BigRat s = 0;
    for (const auto& row : p)
        for (const auto& q : row) s += q;
    return s;
}

JointDist cond_joint_dist(const TheoryConfig& cfg, uint32_t m) {
    if (m == 0 || m > cfg.K) throw std::invalid_argument("cond_joint_dist: m out of range");
    const uint32_t d = cfg.d();
    BigInt hm = h_count(m, cfg.f, d);
    if (hm == 0)
        throw std::invalid_argument("cond_joint_dist: infeasible non-empty bin count");
    JointDist jd;
    jd.d = d;
    jd.m = m;
    jd.p.resize(d + 1);
    for (uint32_t y = 1; y <= std::min(d, cfg.f); ++y) {
        BigRat occ(binom(d, y) * h_count(m - 1, cfg.f - y, d), hm);
        occ.canonicalize();
        if (occ == 0) continue;
        jd.p[y].assign(y + 1, BigRat(0));
        BigInt cf = binom(cfg.f, y);
        for (uint32_t x = 0; x <= std::min(y, cfg.a); ++x) {
            BigRat typ(binom(cfg.a, x) * binom(cfg.f - cfg.a, y - x), cf);
            typ.canonicalize();
            jd.p[y][x] = occ * typ;
        }
    }
    return jd;
}

namespace {

// Choices of j elements on an L-cycle forming exactly rho maximal runs.
std::vector<std::vector<BigInt>> cycle_ways(uint32_t L) {
    std::vector<std::vector<BigInt>> w(L + 1,
                                       std::vector<BigInt>(L / 2 + 1, BigInt(0)));
    w[0][0] = 1;
    w[L][0] = 1;
    for (uint32_t j = 1; j < L; ++j)
        for (uint32_t rho = 1; rho <= std::min(j, L - j); ++rho) {
            BigInt t = binom(j - 1, rho - 1) * binom(L - j - 1, rho - 1) * L;
            mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), rho);
            w[j][rho] = t;
        }
    return w;
}

// N[f'][r]: f'-subsets of Z_d with r step-lag exits, where the lag generates
// g cycles of length d/g.
const std::vector<std::vector<BigInt>>& boundary_table(uint32_t d, uint32_t g) {
    thread_local std::map<std::pair<uint32_t, uint32_t>, std::vector<std::vector<BigInt>>>
        memo;
    auto it = memo.find({d, g});
    if (it != memo.end()) return it->second;

    uint32_t L = d / g;
    auto cw = cycle_ways(L);
    std::vector<std::vector<BigInt>> cur(1, std::vector<BigInt>(1, BigInt(1)));
    for (uint32_t c = 0; c < g; ++c) {
        uint32_t jmax = uint32_t(cur.size()) - 1 + L;
        uint32_t rmax = (uint32_t(cur[0].size()) - 1) + L / 2;
        std::vector<std::vector<BigInt>> next(jmax + 1,
                                              std::vector<BigInt>(rmax + 1, BigInt(0)));
        for (uint32_t j = 0; j < cur.size(); ++j)
            for (uint32_t r = 0; r < cur[j].size(); ++r) {
                if (cur[j][r] == 0) continue;
                for (uint32_t j2 = 0; j2 <= L; ++j2)
                    for (uint32_t r2 = 0; r2 < cw[j2].size(); ++r2) {
                        if (cw[j2][r2] == 0) continue;
                        next[j + j2][r + r2] += cur[j][r] * cw[j2][r2];
                    }
            }
        cur = std::move(next);
    }
    return memo.emplace(std::make_pair(d, g), std::move(cur)).first->second;
}

// Both-rotations-collide probability for a bin profile (a', f') whose union
// subset has r step-lag exits, averaged over the intersection assignment.
BigRat phi(uint32_t a1, uint32_t f1, uint32_t r) {
    BigRat num = 0;
    if (f1 > r && a1 >= 1) {
        BigRat t(uint64_t(f1 - r) * a1 * (a1 - 1), uint64_t(f1) * (f1 - 1));
        t.canonicalize();
        num += t;
    }
    if (r > 0) {
        BigRat t(2 * uint64_t(r) * a1 * a1, uint64_t(f1) * f1);
        t.canonicalize();
        num += t;
    }
    num /= f1 + r;
    return num;
}

} // namespace

BigRat e_tilde_lag(uint32_t a1, uint32_t f1, uint32_t d, uint32_t lag) {
    if (f1 == 0 || f1 > d || a1 > f1)
        throw std::invalid_argument("e_tilde_lag: need 1 <= f' <= d, a' <= f'");
    uint32_t r0 = lag % d;
    if (r0 == 0) throw std::invalid_argument("e_tilde_lag: lag must be nonzero mod d");
    uint32_t g = std::gcd(r0, d);

    thread_local std::map<std::array<uint32_t, 4>, BigRat> memo;
    std::array<uint32_t, 4> key{d, g, f1, a1};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const auto& N = boundary_table(d, g);
    BigRat sum = 0;
    for (uint32_t r = 0; r < N[f1].size(); ++r) {
        if (N[f1][r] == 0) continue;
        sum += BigRat(N[f1][r]) * phi(a1, f1, r);
    }
    sum /= BigRat(binom(d, f1));
    memo.emplace(key, sum);
    return sum;
}

BigRat e_tilde(uint32_t a1, uint32_t f1, uint32_t d) {
    if (f1 == 0 || f1 > d || a1 > f1)
        throw std::invalid_argument("e_tilde: need 1 <= f' <= d, a' <= f'");
    if (d == 1) {
        BigRat r(a1, f1);
        r.canonicalize();
        return r;
    }
    auto euler_phi = [](uint32_t n) {
        uint32_t result = n;
        for (uint32_t p = 2; uint64_t(p) * p <= n; ++p)
            if (n % p == 0) {
                while (n % p == 0) n /= p;
                result -= result / p;
            }
        if (n > 1) result -= result / n;
        return result;
    };
    BigRat sum = 0;
    for (uint32_t g = 1; g < d; ++g)
        if (d % g == 0) sum += BigRat(euler_phi(d / g)) * e_tilde_lag(a1, f1, d, g);
    sum /= d - 1;
    return sum;
}

BigRat b_reden(uint32_t a1, uint32_t f1) {
    if (f1 == 0 || a1 > f1) throw std::invalid_argument("b_reden: need a' <= f', f' >= 1");
    BigRat r(uint64_t(a1) * a1, uint64_t(f1) * f1);
    r.canonicalize();
    return r;
}

namespace {

// Collision expectation of a slot pair with at least one empty side, at slot
// lag `lag`. `bin_pair` maps a profile to the same-donor-bin collision term.
template <class F>
BigRat e1_with(const TheoryConfig& cfg, const JointDist& jd, uint32_t m, F bin_pair) {
    BigRat s = 0;
    for (uint32_t y = 1; y < jd.p.size(); ++y)
        for (uint32_t x = 0; x < jd.p[y].size(); ++x)
            if (jd.p[y][x] != 0) s += bin_pair(x, y) * jd.p[y][x];
    s /= m;
    if (m > 1) s += BigRat(m - 1, m) * cfg.Jt() * cfg.J();
    return s;
}

} // namespace

BigRat e1(const TheoryConfig& cfg, uint32_t m) {
    JointDist jd = cond_joint_dist(cfg, m);
    uint32_t d = cfg.d();
    return e1_with(cfg, jd, m, [&](uint32_t x, uint32_t y) { return e_tilde(x, y, d); });
}

BigRat e1_reden(const TheoryConfig& cfg, uint32_t m) {
    JointDist jd = cond_joint_dist(cfg, m);
    return e1_with(cfg, jd, m, [&](uint32_t x, uint32_t y) { return b_reden(x, y); });
}

BigRat variance_coph(const TheoryConfig& cfg) {
    const uint32_t K = cfg.K, d = cfg.d();
    BigRat J = cfg.J(), Jt = cfg.Jt();
    auto dist = empty_bin_dist(cfg);

    // Rotation-lag multiset over the slot pairs. Within the derivation range
    // (K <= d, no periodic promotion) pair (i, j) sits at lag j - i; outside
    // it the promoted shifts wrap and must be differenced per pair.
    std::vector<uint64_t> lag_weight(d, 0);
    for (uint32_t i = 1; i <= K; ++i)
        for (uint32_t j = i + 1; j <= K; ++j) {
            uint32_t si = coph_shift(i, d, cfg.D, K, K);
            uint32_t sj = coph_shift(j, d, cfg.D, K, K);
            lag_weight[(sj + d - si) % d] += 2;
        }

    BigRat A = BigRat(K) * J;
    for (uint32_t N = 0; N < K; ++N) {
        if (dist[N] == 0) continue;
        uint32_t m = K - N;
        BigRat term = BigRat(uint64_t(m) * (m - 1)) * Jt * J;
        if (N > 0 && K >= 2) {
            JointDist jd = cond_joint_dist(cfg, m);
            BigRat lagsum = 0;
            for (uint32_t delta = 0; delta < d; ++delta) {
                if (lag_weight[delta] == 0) continue;
                BigRat s = 0;
                for (uint32_t y = 1; y < jd.p.size(); ++y)
                    for (uint32_t x = 0; x < jd.p[y].size(); ++x) {
                        if (jd.p[y][x] == 0) continue;
                        // Coinciding rotations (possible only with the
                        // hypotheses overridden) collide twice iff once.
                        BigRat b = delta == 0 ? BigRat(x, y) : e_tilde_lag(x, y, d, delta);
                        b.canonicalize();
                        s += b * jd.p[y][x];
                    }
                s /= m;
                if (m > 1) s += BigRat(m - 1, m) * Jt * J;
                lagsum += BigRat(lag_weight[delta]) * s;
            }
            BigRat coeff(uint64_t(N) * (2 * uint64_t(K) - N - 1), uint64_t(K) * (K - 1));
            coeff.canonicalize();
            term += coeff * lagsum;
        }
        A += dist[N] * term;
    }
    return A / (uint64_t(K) * K) - J * J;
}

BigRat variance_reden(const TheoryConfig& cfg) {
    const uint32_t K = cfg.K;
    BigRat J = cfg.J(), Jt = cfg.Jt();
    auto dist = empty_bin_dist(cfg);
    BigRat A = BigRat(K) * J;
    for (uint32_t N = 0; N < K; ++N) {
        if (dist[N] == 0) continue;
        uint32_t m = K - N;
        BigRat term = BigRat(uint64_t(m) * (m - 1)) * Jt * J;
        // The lag weights sum to K(K-1), cancelling the pair-count divisor.
        if (N > 0 && K >= 2)
            term += BigRat(uint64_t(N) * (2 * uint64_t(K) - N - 1)) * e1_reden(cfg, m);
        A += dist[N] * term;
    }
    return A / (uint64_t(K) * K) - J * J;
}

namespace {

// Visits every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(uint32_t n, uint32_t k, F f) {
    std::vector<uint32_t> idx(k);
    for (uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = int(k) - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

struct TypedPlacement {
    // type[pos]: 0 = unused, 1 = intersection, 2 = v-only, 3 = w-only
    std::vector<uint8_t> type;
};

// Enumerates all typed placements of a intersection, sv v-only and sw w-only
// positions over [D].
template <class F>
void for_each_placement(uint32_t D, uint32_t a, uint32_t sv, uint32_t sw, F f) {
    TypedPlacement tp;
    tp.type.assign(D, 0);
    for_each_subset(D, a, [&](const std::vector<uint32_t>& iset) {
        std::vector<uint32_t> rest1;
        rest1.reserve(D - a);
        {
            std::vector<uint8_t> used(D, 0);
            for (uint32_t i : iset) used[i] = 1;
            for (uint32_t p = 0; p < D; ++p)
                if (!used[p]) rest1.push_back(p);
        }
        for_each_subset(uint32_t(rest1.size()), sv, [&](const std::vector<uint32_t>& vsel) {
            std::vector<uint32_t> rest2;
            rest2.reserve(rest1.size() - sv);
            {
                std::vector<uint8_t> used(rest1.size(), 0);
                for (uint32_t i : vsel) used[i] = 1;
                for (uint32_t p = 0; p < rest1.size(); ++p)
                    if (!used[p]) rest2.push_back(rest1[p]);
            }
            for_each_subset(uint32_t(rest2.size()), sw,
                            [&](const std::vector<uint32_t>& wsel) {
                                std::fill(tp.type.begin(), tp.type.end(), uint8_t(0));
                                for (uint32_t i : iset) tp.type[i] = 1;
                                for (uint32_t i : vsel) tp.type[rest1[i]] = 2;
                                for (uint32_t i : wsel) tp.type[rest2[i]] = 3;
                                f(tp);
                            });
        });
    });
}

OracleResult pack_exact(const BigRat& mean, const BigRat& second) {
    OracleResult r;
    r.exact_mean = mean;
    r.exact_variance = second - mean * mean;
    r.mean = r.exact_mean.get_d();
    r.variance = r.exact_variance.get_d();
    return r;
}

OracleResult exhaustive_minhash(const TheoryConfig& cfg) {
    // One slot: image positions of the union are a uniform typed placement;
    // the hash collides when the lowest image is intersection-typed.
    uint64_t hits = 0, total = 0;
    uint32_t sv = (cfg.f - cfg.a + 1) / 2, sw = cfg.f - cfg.a - sv;
    for_each_placement(cfg.D, cfg.a, sv, sw, [&](const TypedPlacement& tp) {
        for (uint32_t p = 0; p < cfg.D; ++p) {
            if (tp.type[p] == 0) continue;
            hits += tp.type[p] == 1;
            break;
        }
        ++total;
    });
    BigRat p(hits, total);
    p.canonicalize();
    OracleResult r;
    r.exact_mean = p;
    r.exact_variance = p * (1 - p) / cfg.K;
    r.mean = r.exact_mean.get_d();
    r.variance = r.exact_variance.get_d();
    return r;
}

OracleResult exhaustive_cminhash(const TheoryConfig& cfg) {
    if (cfg.D > 8)
        throw std::invalid_argument("brute_force_variance: D too large for full S_D");
    const uint32_t D = cfg.D, K = cfg.K;
    uint32_t sv = (cfg.f - cfg.a + 1) / 2, sw = cfg.f - cfg.a - sv;
    BigRat mean = 0, second = 0;
    uint64_t placements = 0;
    std::vector<uint32_t> perm(D);
    for_each_placement(D, cfg.a, sv, sw, [&](const TypedPlacement& tp) {
        uint64_t s1 = 0, s2 = 0, nperm = 0;
        for (uint32_t i = 0; i < D; ++i) perm[i] = i;
        do {
            uint64_t c = 0;
            for (uint32_t k = 0; k < K; ++k) {
                uint32_t add = (D - (k + 1) % D) % D;
                uint32_t bv = UINT32_MAX, bw = UINT32_MAX;
                for (uint32_t p = 0; p < D; ++p) {
                    uint8_t t = tp.type[p];
                    if (t == 0) continue;
                    uint32_t j = p + add;
                    if (j >= D) j -= D;
                    uint32_t val = perm[j];
                    if (t != 3) bv = std::min(bv, val);
                    if (t != 2) bw = std::min(bw, val);
                }
                c += (bv == bw);
            }
            s1 += c;
            s2 += c * c;
            ++nperm;
        } while (std::next_permutation(perm.begin(), perm.end()));
        mean += BigRat(s1, uint64_t(K) * nperm);
        second += BigRat(s2, uint64_t(K) * K * nperm);
        ++placements;
    });
    mean /= placements;
    second /= placements;
    mean.canonicalize();
    second.canonicalize();
    return pack_exact(mean, second);
}

OracleResult exhaustive_reden(const TheoryConfig& cfg) {
    const uint32_t K = cfg.K, d = cfg.d();
    uint32_t sv = (cfg.f - cfg.a + 1) / 2, sw = cfg.f - cfg.a - sv;
    BigRat mean = 0, second = 0;
    BigInt wsum = 0;
    std::vector<std::array<uint32_t, 3>> bins(K);

    // Enumerate per-bin (intersection, v-only, w-only) counts; slot hashes are
    // independent uniform given the counts, so each configuration contributes
    // in closed form.
    std::function<void(uint32_t, uint32_t, uint32_t, uint32_t, BigInt)> rec =
        [&](uint32_t b, uint32_t ra, uint32_t rv, uint32_t rw, BigInt weight) {
            if (b == K) {
                if (ra || rv || rw) return;
                BigRat sum_q = 0, sum_q2 = 0, donor_q = 0;
                uint32_t m_u = 0;
                for (auto& bn : bins) {
                    uint32_t fb = bn[0] + bn[1] + bn[2];
                    if (fb == 0) continue;
                    ++m_u;
                    BigRat q(bn[0], fb);
                    q.canonicalize();
                    donor_q += q;
                }
                donor_q /= m_u;
                for (auto& bn : bins) {
                    uint32_t fb = bn[0] + bn[1] + bn[2];
                    BigRat q = fb ? BigRat(bn[0], fb) : donor_q;
                    q.canonicalize();
                    sum_q += q;
                    sum_q2 += q * q;
                }
                BigRat w{weight};
                mean += w * sum_q / K;
                second += w * (sum_q + sum_q * sum_q - sum_q2) / (uint64_t(K) * K);
                wsum += weight;
                return;
            }
            for (uint32_t ab = 0; ab <= std::min(ra, d); ++ab)
                for (uint32_t vb = 0; vb + ab <= d && vb <= rv; ++vb)
                    for (uint32_t wb = 0; wb + vb + ab <= d && wb <= rw; ++wb) {
                        bins[b] = {ab, vb, wb};
                        BigInt w2 = weight * binom(d, ab) * binom(d - ab, vb) *
                                    binom(d - ab - vb, wb);
                        rec(b + 1, ra - ab, rv - vb, rw - wb, w2);
                    }
        };
    rec(0, cfg.a, sv, sw, 1);
    mean /= BigRat(wsum);
    second /= BigRat(wsum);
    mean.canonicalize();
    second.canonicalize();
    return pack_exact(mean, second);
}

OracleResult exhaustive_coph(const TheoryConfig& cfg) {
    const uint32_t K = cfg.K, d = cfg.d(), D = cfg.D;
    if (d > 8)
        throw std::invalid_argument("brute_force_variance: d too large for full S_d");
    uint32_t sv = (cfg.f - cfg.a + 1) / 2, sw = cfg.f - cfg.a - sv;
    std::vector<uint32_t> adds(K);
    for (uint32_t k = 0; k < K; ++k)
        adds[k] = (d - coph_shift(k + 1, d, D, K, K)) % d;

    uint64_t factd = 1;
    for (uint32_t i = 2; i <= d; ++i) factd *= i;

    BigRat mean = 0, second = 0;
    uint64_t placements = 0;
    std::vector<std::vector<std::pair<uint32_t, uint8_t>>> members(K);
    std::vector<uint32_t> perm(d);
    std::vector<uint64_t> num(K);

    for_each_placement(D, cfg.a, sv, sw, [&](const TypedPlacement& tp) {
        for (auto& m : members) m.clear();
        uint32_t m_u = 0;
        for (uint32_t p = 0; p < D; ++p)
            if (tp.type[p]) members[p / d].push_back({p % d, tp.type[p]});
        for (auto& m : members) m_u += !m.empty();

        uint64_t A1 = 0, A2 = 0;
        for (uint32_t i = 0; i < d; ++i) perm[i] = i;
        do {
            // collide[b] under slot k's rotation: is the union argmin of bin b
            // intersection-typed?
            uint64_t U1 = 0, sq = 0;
            for (uint32_t k = 0; k < K; ++k) {
                uint32_t add = adds[k];
                if (!members[k].empty()) {
                    uint32_t best = UINT32_MAX;
                    uint8_t bt = 0;
                    for (auto [off, t] : members[k]) {
                        uint32_t j = off + add;
                        if (j >= d) j -= d;
                        if (perm[j] < best) {
                            best = perm[j];
                            bt = t;
                        }
                    }
                    num[k] = uint64_t(m_u) * (bt == 1);
                } else {
                    uint64_t hits = 0;
                    for (uint32_t b = 0; b < K; ++b) {
                        if (members[b].empty()) continue;
                        uint32_t best = UINT32_MAX;
                        uint8_t bt = 0;
                        for (auto [off, t] : members[b]) {
                            uint32_t j = off + add;
                            if (j >= d) j -= d;
                            if (perm[j] < best) {
                                best = perm[j];
                                bt = t;
                            }
                        }
                        hits += (bt == 1);
                    }
                    num[k] = hits;
                }
                U1 += num[k];
                sq += num[k] * num[k];
            }
            A1 += U1;
            A2 += uint64_t(m_u) * U1 + U1 * U1 - sq;
        } while (std::next_permutation(perm.begin(), perm.end()));

        mean += BigRat(A1, uint64_t(K) * m_u * factd);
        second += BigRat(A2, uint64_t(K) * K * m_u * m_u * factd);
        ++placements;
    });
    mean /= placements;
    second /= placements;
    mean.canonicalize();
    second.canonicalize();
    return pack_exact(mean, second);
}

const char* family_scheme_name(Family family) {
    switch (family) {
    case Family::MinHash: return "minhash";
    case Family::CMinHash: return "cminhash";
    case Family::OphRaw: return "oph-raw";
    case Family::OphCopy: return "oph-copy";
    case Family::OphReDen: return "reden";
    case Family::Coph: return "coph";
    }
    throw std::invalid_argument("brute_force_variance: unknown family");
}

} // namespace

OracleResult brute_force_variance(const TheoryConfig& cfg, Family family, OracleMode mode,
                                  uint64_t trials, uint64_t seed) {
    if (mode == OracleMode::MonteCarlo) {
        if (trials == 0)
            throw std::invalid_argument("brute_force_variance: trials must be positive");
        auto [v, w] = make_pair_vectors(cfg.D, cfg.f, cfg.a, seed);
        TrialRun run = run_trials(v, w, {SchemeDesc::parse(family_scheme_name(family))},
                                  cfg.K, cfg.K, trials, seed, 1);
        OracleResult r;
        r.mean = run.stats[0].mean;
        r.variance = run.stats[0].variance;
        r.se_variance = run.stats[0].se_variance;
        return r;
    }
    switch (family) {
    case Family::MinHash: return exhaustive_minhash(cfg);
    case Family::CMinHash: return exhaustive_cminhash(cfg);
    case Family::OphReDen: return exhaustive_reden(cfg);
    case Family::Coph: return exhaustive_coph(cfg);
    default:
        throw std::invalid_argument(
            "brute_force_variance: exhaustive oracle not implemented for this family");
    }
}

} // namespace coph
