#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "../src/rank2u.hpp"
#include "coph/rng.hpp"
#include "coph/two_universal.hpp"

#include <set>
#include <vector>

using namespace coph;

TEST_CASE("primality and next prime") {
    for (uint64_t p : {2ull, 3ull, 5ull, 31ull, 67108859ull, 2147483647ull, 4294967311ull})
        CHECK(is_prime_u64(p));
    for (uint64_t c : {0ull, 1ull, 4ull, 9ull, 561ull, 67108864ull, 4294967297ull})
        CHECK_FALSE(is_prime_u64(c));
    CHECK(next_prime_above(0) == 2);
    CHECK(next_prime_above(1) == 2);
    CHECK(next_prime_above(2) == 3);
    CHECK(next_prime_above(7) == 11);
    CHECK(next_prime_above(4096) == 4099);
    CHECK(next_prime_above(1ull << 26) == 67108879ull);
}

TEST_CASE("random hashes are well-formed and injective on the domain") {
    Rng rng = make_stream(3, Stream::Hash2U, {0});
    for (uint64_t dim : {1ull, 2ull, 100ull, 4096ull}) {
        TwoUniversalHash h = TwoUniversalHash::random(dim, rng);
        CHECK(h.p == next_prime_above(dim));
        CHECK(h.a % 2 == 1);
        CHECK(h.a >= 1);
        CHECK(h.a < h.p);
        CHECK(h.b < h.p);
        std::set<uint64_t> seen;
        for (uint64_t x = 0; x < dim; ++x) {
            uint64_t y = h(x);
            CHECK(y < h.p);
            seen.insert(y);
        }
        CHECK(seen.size() == dim);
    }
}

TEST_CASE("explicit parameters are validated") {
    CHECK_THROWS(TwoUniversalHash::make(3, 0, 10, 5));  // p not prime
    CHECK_THROWS(TwoUniversalHash::make(3, 0, 11, 11)); // p == dim
    CHECK_THROWS(TwoUniversalHash::make(4, 0, 11, 5));  // a even
    CHECK_THROWS(TwoUniversalHash::make(0, 0, 11, 5));  // a zero
    CHECK_THROWS(TwoUniversalHash::make(11, 0, 11, 5)); // a == p
    CHECK_THROWS(TwoUniversalHash::make(3, 11, 11, 5)); // b == p
    TwoUniversalHash h = TwoUniversalHash::make(3, 10, 11, 5);
    CHECK(h(4) == (3 * 4 + 10) % 11);
}

TEST_CASE("floor_sum and count_hash_below match direct loops") {
    Rng rng = make_stream(3, Stream::Hash2U, {1});
    for (int rep = 0; rep < 50; ++rep) {
        uint64_t m = 1 + rng.below(97);
        uint64_t a = rng.below(200);
        uint64_t b = rng.below(200);
        uint64_t n = rng.below(60);
        unsigned __int128 want = 0;
        for (uint64_t x = 0; x < n; ++x) want += (a * x + b) / m;
        CHECK(uint64_t(detail::floor_sum(n, m, a, b)) == uint64_t(want));
    }
    for (uint64_t p : {11ull, 101ull, 4099ull}) {
        for (int rep = 0; rep < 20; ++rep) {
            uint64_t a = 1 + rng.below(p - 1);
            uint64_t b = rng.below(p);
            uint64_t n = rng.below(2 * p);
            for (uint64_t T : {uint64_t(0), uint64_t(1), p / 3, p - 1, p}) {
                uint64_t want = 0;
                for (uint64_t x = 0; x < n; ++x)
                    if ((a * x + b) % p < T) ++want;
                CHECK(detail::count_hash_below(a, b, p, n, T) == want);
            }
        }
    }
}
