#include "kernels_internal.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace coph::kern {

namespace {

uint32_t min_shift_gather_neon(const uint32_t* table, uint32_t n, uint32_t add,
                               const uint32_t* idx, size_t cnt) {
    uint32x4_t best = vdupq_n_u32(UINT32_MAX);
    uint32x4_t vadd = vdupq_n_u32(add);
    uint32x4_t vn = vdupq_n_u32(n);
    size_t i = 0;
    for (; i + 4 <= cnt; i += 4) {
        uint32x4_t j = vaddq_u32(vld1q_u32(idx + i), vadd);
        j = vminq_u32(j, vsubq_u32(j, vn)); // idx < n, add < n, so j < 2n
        // No vector gather on NEON; scalar loads per lane.
        uint32_t lanes[4] = {table[vgetq_lane_u32(j, 0)], table[vgetq_lane_u32(j, 1)],
                             table[vgetq_lane_u32(j, 2)], table[vgetq_lane_u32(j, 3)]};
        best = vminq_u32(best, vld1q_u32(lanes));
    }
    uint32_t m = vminvq_u32(best);
    for (; i < cnt; ++i) {
        uint32_t j = idx[i] + add;
        if (j >= n) j -= n;
        if (table[j] < m) m = table[j];
    }
    return m;
}

void affine_mod_neon(uint64_t a, uint64_t b, uint64_t p, const uint32_t* x, uint32_t* out,
                     size_t cnt) {
    for (size_t i = 0; i < cnt; ++i) out[i] = uint32_t((a * x[i] + b) % p);
}

uint32_t affine_mod_min_neon(uint64_t a, uint64_t b, uint64_t p, const uint32_t* x, size_t cnt) {
    uint32_t best = UINT32_MAX;
    for (size_t i = 0; i < cnt; ++i) {
        uint32_t v = uint32_t((a * x[i] + b) % p);
        if (v < best) best = v;
    }
    return best;
}

size_t count_eq_neon(const uint64_t* a, const uint64_t* b, size_t n) {
    size_t c = 0, i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t eq = vceqq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        c += (vgetq_lane_u64(eq, 0) & 1) + (vgetq_lane_u64(eq, 1) & 1);
    }
    for (; i < n; ++i) c += (a[i] == b[i]);
    return c;
}

void count_eq_valid_neon(const uint64_t* a, const uint64_t* b, size_t n, uint64_t empty,
                         size_t* both_valid, size_t* equal) {
    size_t valid = 0, eq = 0;
    for (size_t i = 0; i < n; ++i) {
        bool v = a[i] != empty && b[i] != empty;
        valid += v;
        eq += v && a[i] == b[i];
    }
    *both_valid = valid;
    *equal = eq;
}

} // namespace

bool neon_available() { return true; }

const Ops& neon_ops() {
    static const Ops ops = {
        min_shift_gather_neon, affine_mod_neon, affine_mod_min_neon,
        count_eq_neon,         count_eq_valid_neon,
    };
    return ops;
}

} // namespace coph::kern

#else // non-aarch64

namespace coph::kern {
bool neon_available() { return false; }
const Ops& neon_ops() { return scalar_ops(); }
} // namespace coph::kern

#endif
