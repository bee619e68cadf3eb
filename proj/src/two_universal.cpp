#include "coph/two_universal.hpp"

#include <stdexcept>

namespace coph {

namespace {
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t(__uint128_t(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}
} // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull,
                       37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    // Deterministic Miller-Rabin for 64-bit with the first 12 prime bases.
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t base : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
        uint64_t x = powmod(base, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t next_prime_above(uint64_t n) {
    uint64_t c = n + 1;
    if (c <= 2) return 2;
    if (c % 2 == 0) ++c;
    while (!is_prime_u64(c)) c += 2;
    return c;
}

TwoUniversalHash TwoUniversalHash::random(uint64_t dim, Rng& rng) {
    uint64_t p = next_prime_above(dim);
    uint64_t a = 2 * rng.below((p - 1) / 2 + ((p - 1) & 1)) + 1; // odd in [1, p)
    uint64_t b = rng.below(p);
    return make(a, b, p, dim);
}

TwoUniversalHash TwoUniversalHash::make(uint64_t a, uint64_t b, uint64_t p, uint64_t dim) {
    if (!is_prime_u64(p)) throw std::invalid_argument("modulus not prime");
    if (p <= dim) throw std::invalid_argument("modulus not above domain");
    if (a == 0 || a >= p || (a & 1) == 0) throw std::invalid_argument("multiplier not odd in [1, p)");
    if (b >= p) throw std::invalid_argument("offset out of range");
    return {a, b, p};
}

} // namespace coph
