#include "kernels_internal.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace coph::kern {

namespace {

// Doubles represent every integer below 2^53 exactly, so for p below 2^26
// the whole (a*x + b) mod p computation stays exact in double lanes:
// a*x + b < p^2 < 2^52, the quotient estimate is off by at most one, and
// the fix-up steps restore the true remainder.
constexpr uint64_t FMA_MOD_LIMIT = 1ull << 26;

__attribute__((target("avx2"))) inline uint32_t reduce_min_epu32(__m256i v) {
    __m128i lo = _mm256_castsi256_si128(v);
    __m128i hi = _mm256_extracti128_si256(v, 1);
    __m128i m = _mm_min_epu32(lo, hi);
    m = _mm_min_epu32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(1, 0, 3, 2)));
    m = _mm_min_epu32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(2, 3, 0, 1)));
    return uint32_t(_mm_cvtsi128_si32(m));
}

__attribute__((target("avx2"))) uint32_t min_shift_gather_avx2(const uint32_t* table, uint32_t n,
                                                               uint32_t add, const uint32_t* idx,
                                                               size_t cnt) {
    __m256i best = _mm256_set1_epi32(-1);
    __m256i vadd = _mm256_set1_epi32(int(add));
    __m256i vn = _mm256_set1_epi32(int(n));
    size_t i = 0;
    for (; i + 8 <= cnt; i += 8) {
        __m256i j = _mm256_add_epi32(_mm256_loadu_si256((const __m256i*)(idx + i)), vadd);
        // idx < n and add < n, so j < 2n: min(j, j - n) is the wrapped index.
        j = _mm256_min_epu32(j, _mm256_sub_epi32(j, vn));
        __m256i v = _mm256_i32gather_epi32((const int*)table, j, 4);
        best = _mm256_min_epu32(best, v);
    }
    uint32_t m = reduce_min_epu32(best);
    for (; i < cnt; ++i) {
        uint32_t j = idx[i] + add;
        if (j >= n) j -= n;
        if (table[j] < m) m = table[j];
    }
    return m;
}

// out = (a*x + b) mod p for 4 lanes held as doubles; exact below FMA_MOD_LIMIT.
__attribute__((target("avx2,fma"))) inline __m256d affine_mod_pd(__m256d x, __m256d va,
                                                                 __m256d vb, __m256d vp,
                                                                 __m256d vinvp) {
    __m256d y = _mm256_fmadd_pd(va, x, vb);
    __m256d q = _mm256_floor_pd(_mm256_mul_pd(y, vinvp));
    __m256d r = _mm256_fnmadd_pd(q, vp, y);
    // Quotient estimate off by at most one in either direction.
    r = _mm256_add_pd(r, _mm256_and_pd(vp, _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ)));
    r = _mm256_sub_pd(r, _mm256_and_pd(vp, _mm256_cmp_pd(r, vp, _CMP_GE_OQ)));
    return r;
}

__attribute__((target("avx2,fma"))) void affine_mod_avx2(uint64_t a, uint64_t b, uint64_t p,
                                                         const uint32_t* x, uint32_t* out,
                                                         size_t cnt) {
    if (p >= FMA_MOD_LIMIT) {
        for (size_t i = 0; i < cnt; ++i) out[i] = uint32_t((a * x[i] + b) % p);
        return;
    }
    __m256d va = _mm256_set1_pd(double(a));
    __m256d vb = _mm256_set1_pd(double(b));
    __m256d vp = _mm256_set1_pd(double(p));
    __m256d vinvp = _mm256_set1_pd(1.0 / double(p));
    size_t i = 0;
    for (; i + 4 <= cnt; i += 4) {
        __m128i xi = _mm_loadu_si128((const __m128i*)(x + i));
        __m256d xd = _mm256_cvtepi32_pd(xi); // x < p < 2^26 fits signed 32-bit
        __m256d r = affine_mod_pd(xd, va, vb, vp, vinvp);
        _mm_storeu_si128((__m128i*)(out + i), _mm256_cvtpd_epi32(r));
    }
    for (; i < cnt; ++i) out[i] = uint32_t((a * x[i] + b) % p);
}

__attribute__((target("avx2,fma"))) uint32_t affine_mod_min_avx2(uint64_t a, uint64_t b,
                                                                 uint64_t p, const uint32_t* x,
                                                                 size_t cnt) {
    uint32_t best = UINT32_MAX;
    if (p >= FMA_MOD_LIMIT) {
        for (size_t i = 0; i < cnt; ++i) {
            uint32_t v = uint32_t((a * x[i] + b) % p);
            if (v < best) best = v;
        }
        return best;
    }
    __m256d va = _mm256_set1_pd(double(a));
    __m256d vb = _mm256_set1_pd(double(b));
    __m256d vp = _mm256_set1_pd(double(p));
    __m256d vinvp = _mm256_set1_pd(1.0 / double(p));
    __m256d vbest = _mm256_set1_pd(double(p));
    size_t i = 0;
    for (; i + 4 <= cnt; i += 4) {
        __m128i xi = _mm_loadu_si128((const __m128i*)(x + i));
        __m256d r = affine_mod_pd(_mm256_cvtepi32_pd(xi), va, vb, vp, vinvp);
        vbest = _mm256_min_pd(vbest, r);
    }
    if (i != 0) {
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, vbest);
        for (double l : lanes)
            if (l < double(best)) best = uint32_t(l);
    }
    for (; i < cnt; ++i) {
        uint32_t v = uint32_t((a * x[i] + b) % p);
        if (v < best) best = v;
    }
    return best;
}

__attribute__((target("avx2"))) size_t count_eq_avx2(const uint64_t* a, const uint64_t* b,
                                                     size_t n) {
    size_t c = 0, i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256((const __m256i*)(a + i));
        __m256i vb = _mm256_loadu_si256((const __m256i*)(b + i));
        int mask = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(va, vb)));
        c += size_t(__builtin_popcount(unsigned(mask)));
    }
    for (; i < n; ++i) c += (a[i] == b[i]);
    return c;
}

__attribute__((target("avx2"))) void count_eq_valid_avx2(const uint64_t* a, const uint64_t* b,
                                                         size_t n, uint64_t empty,
                                                         size_t* both_valid, size_t* equal) {
    size_t valid = 0, eq = 0, i = 0;
    __m256i ve = _mm256_set1_epi64x(int64_t(empty));
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256((const __m256i*)(a + i));
        __m256i vb = _mm256_loadu_si256((const __m256i*)(b + i));
        __m256i inval = _mm256_or_si256(_mm256_cmpeq_epi64(va, ve), _mm256_cmpeq_epi64(vb, ve));
        __m256i eqv = _mm256_andnot_si256(inval, _mm256_cmpeq_epi64(va, vb));
        int mv = _mm256_movemask_pd(_mm256_castsi256_pd(inval));
        int me = _mm256_movemask_pd(_mm256_castsi256_pd(eqv));
        valid += 4 - size_t(__builtin_popcount(unsigned(mv)));
        eq += size_t(__builtin_popcount(unsigned(me)));
    }
    for (; i < n; ++i) {
        bool v = a[i] != empty && b[i] != empty;
        valid += v;
        eq += v && a[i] == b[i];
    }
    *both_valid = valid;
    *equal = eq;
}

} // namespace

bool avx2_available() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }

const Ops& avx2_ops() {
    static const Ops ops = {
        min_shift_gather_avx2, affine_mod_avx2, affine_mod_min_avx2,
        count_eq_avx2,         count_eq_valid_avx2,
    };
    return ops;
}

} // namespace coph::kern

#else // non-x86

namespace coph::kern {
bool avx2_available() { return false; }
const Ops& avx2_ops() { return scalar_ops(); }
} // namespace coph::kern

#endif
