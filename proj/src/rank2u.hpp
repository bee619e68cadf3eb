#pragma once
// Internal: order statistics of H(x) = (a*x + b) mod p over [0, n) without
// materializing the table, via the floor-sum identity.

#include <cstdint>
#include <utility>

namespace coph::detail {

// sum_{x=0}^{n-1} floor((a*x + b) / m), m >= 1.
inline unsigned __int128 floor_sum(unsigned __int128 n, unsigned __int128 m,
                                   unsigned __int128 a, unsigned __int128 b) {
    unsigned __int128 ans = 0;
    while (true) {
        if (a >= m) {
            ans += (n - 1) * n / 2 * (a / m);
            a %= m;
        }
        if (b >= m) {
            ans += n * (b / m);
            b %= m;
        }
        unsigned __int128 y = a * n + b;
        if (y < m) break;
        n = y / m;
        b = y % m;
        std::swap(m, a);
    }
    return ans;
}

// #{x in [0, n): (a*x + b) mod p < T}, for 0 <= T <= p.
// [y mod p < T] = floor(y/p) - floor((y-T)/p); the subtrahend is shifted by
// one period to stay non-negative.
inline uint64_t count_hash_below(uint64_t a, uint64_t b, uint64_t p, uint64_t n, uint64_t T) {
    if (n == 0 || T == 0) return 0;
    unsigned __int128 lo = floor_sum(n, p, a, b);
    unsigned __int128 hi = floor_sum(n, p, a, b + p - T);
    return uint64_t(lo - (hi - n));
}

} // namespace coph::detail
