#pragma once
// Hot inner-loop kernels: scalar reference implementations plus SIMD
// variants selected once at startup from CPU capabilities. The scalar and
// SIMD paths are exact-equivalent (integer semantics, no fast-math); the
// test suite asserts bit-for-bit agreement on random inputs.
//
// Selection override: COPH_KERNELS=scalar|avx2|neon in the environment, or
// kern::force() at runtime (tests use both).

#include <cstddef>
#include <cstdint>

namespace coph::kern {

struct Ops {
    // min over i of table[idx[i] + add mod n], with 0 <= idx[i] < n and
    // 0 <= add < n. Returns UINT32_MAX when cnt == 0.
    uint32_t (*min_shift_gather_u32)(const uint32_t* table, uint32_t n, uint32_t add,
                                     const uint32_t* idx, size_t cnt);
    // out[i] = (a * x[i] + b) mod p, exact for any prime p < 2^32, a,b < p,
    // x[i] < p.
    void (*affine_mod_u32)(uint64_t a, uint64_t b, uint64_t p, const uint32_t* x,
                           uint32_t* out, size_t cnt);
    // min over i of (a * x[i] + b) mod p. Returns UINT32_MAX when cnt == 0.
    uint32_t (*affine_mod_min_u32)(uint64_t a, uint64_t b, uint64_t p, const uint32_t* x,
                                   size_t cnt);
    // #slots with a[i] == b[i].
    size_t (*count_eq_u64)(const uint64_t* a, const uint64_t* b, size_t n);
    // Raw-sketch comparison: *both_valid = #slots with a[i] != empty and
    // b[i] != empty; *equal = #such slots that also agree.
    void (*count_eq_valid_u64)(const uint64_t* a, const uint64_t* b, size_t n,
                               uint64_t empty, size_t* both_valid, size_t* equal);
};

const Ops& ops();        // active (runtime-selected) implementation
const Ops& scalar_ops(); // always-available reference
const char* active_name();
// Force a named implementation ("scalar", "avx2", "neon", "auto").
// Returns false (and leaves selection unchanged) if unavailable on this CPU.
bool force(const char* name);

} // namespace coph::kern
