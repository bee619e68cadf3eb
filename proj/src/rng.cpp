#include "coph/rng.hpp"

namespace coph {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t derive_key(uint64_t key, uint64_t component) {
    uint64_t state = key ^ (component * 0x9e3779b97f4a7c15ull);
    uint64_t out = splitmix64(state);
    out = splitmix64(state) ^ out * 0xff51afd7ed558ccdull;
    return out;
}

namespace {
inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
} // namespace

Rng::Rng(uint64_t key) {
    // Expand the key through splitmix64; the all-zero state is unreachable.
    uint64_t state = key;
    for (auto& s : s_) s = splitmix64(state);
}

uint64_t Rng::next() {
    uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

uint64_t Rng::below(uint64_t n) {
    // Lemire's multiply-shift with rejection on the biased low range.
    uint64_t x = next();
    __uint128_t m = __uint128_t(x) * n;
    uint64_t lo = uint64_t(m);
    if (lo < n) {
        uint64_t threshold = (0 - n) % n;
        while (lo < threshold) {
            x = next();
            m = __uint128_t(x) * n;
            lo = uint64_t(m);
        }
    }
    return uint64_t(m >> 64);
}

double Rng::unit() { return double(next() >> 11) * 0x1.0p-53; }

uint64_t stream_key(uint64_t seed, Stream role, std::initializer_list<uint64_t> path) {
    uint64_t key = derive_key(seed, uint64_t(role));
    for (uint64_t c : path) key = derive_key(key, c);
    return key;
}

Rng make_stream(uint64_t seed, Stream role, std::initializer_list<uint64_t> path) {
    return Rng(stream_key(seed, role, path));
}

} // namespace coph
