#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coph/theory.hpp"
#include "within_bin_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace coph;

namespace {

// Popcount of the occupied cells of bin b under a D-position occupancy mask.
uint32_t bin_count(uint64_t mask, uint32_t b, uint32_t d) {
    return uint32_t(__builtin_popcountll((mask >> (b * d)) & ((1ull << d) - 1)));
}

} // namespace

TEST_CASE("binomials") {
    CHECK(binom(0, 0) == 1);
    CHECK(binom(5, 2) == 10);
    CHECK(binom(5, 6) == 0);
    CHECK(binom(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("h_count matches inclusion-exclusion everywhere") {
    CHECK(h_count(2, 2, 2) == 4);
    CHECK(h_count(0, 0, 3) == 1);
    CHECK(h_count(0, 1, 3) == 0);
    for (uint32_t k = 1; k <= 5; ++k)
        for (uint32_t d = 1; d <= 5; ++d)
            for (uint32_t n = 0; n <= k * d + 2; ++n) {
                BigInt ie = 0;
                for (uint32_t l = 0; l <= k; ++l) {
                    BigInt term = binom(k, l) * binom(uint64_t(k - l) * d, n);
                    if (l % 2)
                        ie -= term;
                    else
                        ie += term;
                }
                CHECK(h_count(k, n, d) == ie);
            }
}

TEST_CASE("empty-bin and joint profile distributions match direct enumeration") {
    TheoryConfig cfg = TheoryConfig::make(8, 2, 2, 4);
    const uint32_t D = 8, K = 2, d = 4, f = 4;

    auto dist = empty_bin_dist(cfg);
    REQUIRE(dist.size() == K + 1);
    BigRat sum = 0;
    for (const auto& p : dist) sum += p;
    CHECK(sum == 1);

    // Enumerate every occupancy subset; bin profiles follow by counting.
    std::vector<BigRat> want_empty(K + 1, 0);
    uint64_t n_subsets = 0;
    // want_joint[m][y][x] accumulates the uniformly-chosen-bin profile mass
    // given m non-empty bins, one typing at a time.
    std::vector<std::vector<std::vector<BigRat>>> want_joint(
        K + 1, std::vector<std::vector<BigRat>>(d + 1, std::vector<BigRat>(d + 1, 0)));
    std::vector<uint64_t> m_subsets(K + 1, 0);

    for (uint64_t mask = 0; mask < (1ull << D); ++mask) {
        if (uint32_t(__builtin_popcountll(mask)) != f) continue;
        ++n_subsets;
        uint32_t nonempty = 0;
        for (uint32_t b = 0; b < K; ++b) nonempty += bin_count(mask, b, d) > 0;
        want_empty[K - nonempty] += 1;

        // Type a of the f occupied positions as intersection, every way.
        std::vector<uint32_t> occ;
        for (uint32_t j = 0; j < D; ++j)
            if ((mask >> j) & 1) occ.push_back(j);
        uint64_t typings = 0;
        for (uint32_t tm = 0; tm < (1u << f); ++tm) {
            if (uint32_t(__builtin_popcount(tm)) != cfg.a) continue;
            ++typings;
            for (uint32_t b = 0; b < K; ++b) {
                uint32_t y = bin_count(mask, b, d);
                if (y == 0) continue;
                uint32_t x = 0;
                for (uint32_t i = 0; i < f; ++i)
                    if (((tm >> i) & 1) && occ[i] / d == b) ++x;
                want_joint[nonempty][y][x] += BigRat(1, nonempty);
            }
        }
        m_subsets[nonempty] += typings;
    }
    for (uint32_t j = 0; j <= K; ++j) {
        want_empty[j] /= n_subsets;
        want_empty[j].canonicalize();
        CHECK(dist[j] == want_empty[j]);
    }
    for (uint32_t m = 1; m <= K; ++m) {
        JointDist jd = cond_joint_dist(cfg, m);
        CHECK(jd.total() == 1);
        for (uint32_t y = 0; y <= d; ++y)
            for (uint32_t x = 0; x <= y; ++x) {
                BigRat got = y < jd.p.size() && x < jd.p[y].size() ? jd.p[y][x] : BigRat(0);
                BigRat want = want_joint[m][y][x] / m_subsets[m];
                want.canonicalize();
                CHECK(got == want);
            }
    }
    CHECK_THROWS_AS(cond_joint_dist(cfg, 0), std::invalid_argument);
    CHECK_THROWS_AS(cond_joint_dist(cfg, K + 1), std::invalid_argument);
}

TEST_CASE("rotated within-bin collision probabilities match literal enumeration") {
    for (uint32_t d = 2; d <= 5; ++d)
        for (uint32_t f1 = 1; f1 <= d; ++f1)
            for (uint32_t a1 = 0; a1 <= f1; ++a1)
                for (uint32_t lag = 1; lag < d; ++lag) {
                    BigRat got = e_tilde_lag(a1, f1, d, lag);
                    mpq_class want = testutil::oracle_collide_lag(a1, f1, d, lag);
                    CHECK_MESSAGE(got == want,
                                  "a'=" << a1 << " f'=" << f1 << " d=" << d << " lag=" << lag);
                }
    // Pinned small values and the lag average.
    CHECK(e_tilde_lag(1, 2, 4, 1) == BigRat(7, 36));
    CHECK(e_tilde_lag(1, 2, 4, 2) == BigRat(1, 6));
    CHECK(e_tilde_lag(1, 2, 4, 3) == BigRat(7, 36));
    CHECK(e_tilde(1, 2, 4) == BigRat(5, 27));
    CHECK(e_tilde(1, 2, 4) == testutil::oracle_collide_avg(1, 2, 4));
}

TEST_CASE("within-bin edge laws") {
    for (uint32_t d : {2u, 3u, 5u, 8u}) {
        for (uint32_t lag = 1; lag < d; ++lag) {
            // Full-intersection bins always collide.
            for (uint32_t f1 = 1; f1 <= d; ++f1) CHECK(e_tilde_lag(f1, f1, d, lag) == 1);
            // A full bin pins the two minima to two distinct cells.
            for (uint32_t a1 = 0; a1 <= d; ++a1) {
                BigRat want(uint64_t(a1) * (a1 > 0 ? a1 - 1 : 0), uint64_t(d) * (d - 1));
                want.canonicalize();
                CHECK(e_tilde_lag(a1, d, d, lag) == want);
            }
            // A single occupied cell is both minima.
            CHECK(e_tilde_lag(0, 1, d, lag) == 0);
            CHECK(e_tilde_lag(1, 1, d, lag) == 1);
        }
        CHECK_THROWS_AS(e_tilde_lag(1, 2, d, 0), std::invalid_argument);
        CHECK_THROWS_AS(e_tilde_lag(1, 2, d, d), std::invalid_argument);
    }
    CHECK(e_tilde(1, 1, 1) == 1);
    CHECK(e_tilde(0, 1, 1) == 0);
    CHECK_THROWS_AS(e_tilde(2, 3, 1), std::invalid_argument); // f' > d is infeasible
    CHECK(b_reden(2, 3) == BigRat(4, 9));
}

TEST_CASE("config validation") {
    CHECK_THROWS_WITH_AS(TheoryConfig::make(12, 5, 2, 5), "theory: K must divide D",
                         std::invalid_argument);
    CHECK_THROWS_AS(TheoryConfig::make(12, 2, 6, 5), std::invalid_argument);  // a > f
    CHECK_THROWS_AS(TheoryConfig::make(12, 2, 0, 0), std::invalid_argument);  // f < 1
    CHECK_THROWS_AS(TheoryConfig::make(12, 2, 2, 13), std::invalid_argument); // f > D
    CHECK_THROWS_WITH_AS(TheoryConfig::make(8, 4, 2, 5),
                         "theory: closed forms need K^2 <= D", std::invalid_argument);
    CHECK_THROWS_WITH_AS(TheoryConfig::make(16, 4, 2, 13),
                         "theory: closed forms need f <= (K-1)*D/K", std::invalid_argument);
    TheoryConfig ovr = TheoryConfig::make(8, 4, 2, 5, true);
    CHECK(ovr.d() == 2);
    TheoryConfig c = TheoryConfig::make(12, 2, 2, 5);
    CHECK(c.J() == BigRat(2, 5));
    CHECK(c.Jt() == BigRat(1, 4));
    CHECK(TheoryConfig::make(12, 2, 0, 1).Jt() == 0);
}

TEST_CASE("closed-form variances match exhaustive pipeline enumeration") {
    // Inside the derivation hypotheses.
    struct Cfg {
        uint32_t D, K, a, f;
        bool ovr;
    };
    std::vector<Cfg> cases{
        {12, 2, 2, 5, false}, {8, 2, 1, 3, false}, {9, 3, 2, 5, false}, {6, 1, 2, 4, false},
        {8, 2, 1, 1, false},  {8, 4, 2, 5, true},  {8, 8, 2, 5, true},  {12, 6, 3, 5, true},
    };
    for (const Cfg& c : cases) {
        TheoryConfig cfg = TheoryConfig::make(c.D, c.K, c.a, c.f, c.ovr);
        OracleResult co = brute_force_variance(cfg, Family::Coph, OracleMode::Exhaustive);
        OracleResult re = brute_force_variance(cfg, Family::OphReDen, OracleMode::Exhaustive);
        CHECK_MESSAGE(co.exact_mean == cfg.J(), c.D << "/" << c.K);
        CHECK_MESSAGE(re.exact_mean == cfg.J(), c.D << "/" << c.K);
        CHECK_MESSAGE(co.exact_variance == variance_coph(cfg), c.D << "/" << c.K);
        CHECK_MESSAGE(re.exact_variance == variance_reden(cfg), c.D << "/" << c.K);
    }

    // Pinned rationals for one reference configuration.
    TheoryConfig ref = TheoryConfig::make(12, 2, 2, 5);
    CHECK(variance_coph(ref) == BigRat(119, 1320));
    CHECK(variance_reden(ref) == BigRat(199, 2200));

    // Degenerate laws.
    TheoryConfig k1 = TheoryConfig::make(6, 1, 2, 4);
    CHECK(variance_coph(k1) == BigRat(1, 4)); // J(1-J) at J = 1/2
    CHECK(variance_reden(k1) == BigRat(1, 4));
    TheoryConfig a0 = TheoryConfig::make(12, 2, 0, 5);
    CHECK(variance_coph(a0) == 0);
    TheoryConfig af = TheoryConfig::make(12, 2, 5, 5);
    CHECK(variance_coph(af) == 0);
    CHECK(variance_reden(af) == 0);
}

TEST_CASE("the circulant fill beats the independent fill inside the hypotheses") {
    struct Cfg {
        uint32_t D, K, a, f;
    };
    for (const Cfg& c : std::vector<Cfg>{{16, 4, 3, 9}, {36, 6, 4, 20}, {64, 8, 10, 30}}) {
        TheoryConfig cfg = TheoryConfig::make(c.D, c.K, c.a, c.f);
        CHECK(variance_coph(cfg) < variance_reden(cfg));
    }
}

TEST_CASE("monte-carlo oracle agrees with the closed forms") {
    TheoryConfig cfg = TheoryConfig::make(64, 4, 8, 24);
    for (Family fam : {Family::Coph, Family::OphReDen}) {
        BigRat closed = fam == Family::Coph ? variance_coph(cfg) : variance_reden(cfg);
        OracleResult mc = brute_force_variance(cfg, fam, OracleMode::MonteCarlo, 30000, 12);
        REQUIRE(mc.se_variance > 0);
        double delta = std::abs(mc.variance - closed.get_d());
        CHECK_MESSAGE(delta < 3.5 * mc.se_variance, "family " << int(fam));
        CHECK(std::abs(mc.mean - cfg.J().get_d()) < 0.05);
    }
}

TEST_CASE("oracle mode guards") {
    TheoryConfig cfg = TheoryConfig::make(12, 2, 2, 5);
    CHECK_THROWS_AS(brute_force_variance(cfg, Family::OphRaw, OracleMode::Exhaustive),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_variance(cfg, Family::OphCopy, OracleMode::Exhaustive),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_variance(cfg, Family::Coph, OracleMode::MonteCarlo, 0),
                    std::invalid_argument);
    TheoryConfig big = TheoryConfig::make(1024, 32, 100, 300, true);
    CHECK_THROWS_AS(brute_force_variance(big, Family::CMinHash, OracleMode::Exhaustive),
                    std::invalid_argument);
}
