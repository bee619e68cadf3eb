#include "coph/kernels.hpp"

namespace coph::kern {

namespace {

uint32_t min_shift_gather_u32_scalar(const uint32_t* table, uint32_t n, uint32_t add,
                                     const uint32_t* idx, size_t cnt) {
    uint32_t best = UINT32_MAX;
    for (size_t i = 0; i < cnt; ++i) {
        uint32_t j = idx[i] + add;
        if (j >= n) j -= n;
        uint32_t v = table[j];
        if (v < best) best = v;
    }
    return best;
}

void affine_mod_u32_scalar(uint64_t a, uint64_t b, uint64_t p, const uint32_t* x,
                           uint32_t* out, size_t cnt) {
    for (size_t i = 0; i < cnt; ++i) out[i] = uint32_t((a * x[i] + b) % p);
}

uint32_t affine_mod_min_u32_scalar(uint64_t a, uint64_t b, uint64_t p, const uint32_t* x,
                                   size_t cnt) {
    uint32_t best = UINT32_MAX;
    for (size_t i = 0; i < cnt; ++i) {
        uint32_t v = uint32_t((a * x[i] + b) % p);
        if (v < best) best = v;
    }
    return best;
}

size_t count_eq_u64_scalar(const uint64_t* a, const uint64_t* b, size_t n) {
    size_t c = 0;
    for (size_t i = 0; i < n; ++i) c += (a[i] == b[i]);
    return c;
}

void count_eq_valid_u64_scalar(const uint64_t* a, const uint64_t* b, size_t n, uint64_t empty,
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

const Ops& scalar_ops() {
    static const Ops ops = {
        min_shift_gather_u32_scalar, affine_mod_u32_scalar, affine_mod_min_u32_scalar,
        count_eq_u64_scalar,         count_eq_valid_u64_scalar,
    };
    return ops;
}

} // namespace coph::kern
