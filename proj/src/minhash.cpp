#include "coph/minhash.hpp"

#include "coph/kernels.hpp"
#include "coph/permutation.hpp"
#include "coph/two_universal.hpp"
#include "rank2u.hpp"

#include <stdexcept>

namespace coph {

Sketch minhash_standard(const BinaryVector& v, uint32_t K, uint64_t seed) {
    if (v.support.empty()) throw std::invalid_argument("minhash_standard: empty support");
    if (K == 0) throw std::invalid_argument("minhash_standard: K must be positive");
    const uint32_t D = v.dim;

    Sketch s;
    s.scheme = SchemeDesc{Family::MinHash};
    s.D = D;
    s.K = 0;
    s.M = K;
    s.seed = seed;
    s.values.resize(K);
    for (uint32_t k = 0; k < K; ++k) {
        Rng rng = make_stream(seed, Stream::Pi, {k});
        Permutation perm = Permutation::random(D, rng);
        s.values[k] = kern::ops().min_shift_gather_u32(perm.table.data(), D, 0,
                                                       v.support.data(), v.support.size());
    }
    return s;
}

Sketch cminhash(const BinaryVector& v, uint32_t K, uint64_t seed, SigmaKind sigma, PiKind pi) {
    if (v.support.empty()) throw std::invalid_argument("cminhash: empty support");
    if (K == 0) throw std::invalid_argument("cminhash: K must be positive");
    const uint32_t D = v.dim;
    if (K > D) throw std::invalid_argument("cminhash: K <= D required for distinct rotations");
    if (sigma == SigmaKind::ReusePi && pi != PiKind::Exact)
        throw std::invalid_argument("cminhash: the pi-reusing scramble needs an explicit rotation base");
    if (sigma == SigmaKind::TwoU && pi == PiKind::TwoU)
        throw std::invalid_argument("cminhash: (2U, 2U) is not a supported variant");

    Sketch s;
    s.scheme = SchemeDesc{Family::CMinHash, sigma, pi};
    s.D = D;
    s.K = 0;
    s.M = K;
    s.seed = seed;
    s.values.resize(K);

    Permutation base; // rotation base when pi == Exact
    if (pi == PiKind::Exact) {
        Rng rng = make_stream(seed, Stream::Pi);
        base = Permutation::random(D, rng);
    }

    std::vector<uint32_t> rel(v.support.size());
    switch (sigma) {
    case SigmaKind::Exact: {
        Rng rng = make_stream(seed, Stream::Sigma);
        Permutation sg = Permutation::random(D, rng);
        for (size_t i = 0; i < rel.size(); ++i) rel[i] = sg(v.support[i]);
        break;
    }
    case SigmaKind::TwoU: {
        Rng rng = make_stream(seed, Stream::Sigma);
        TwoUniversalHash h = TwoUniversalHash::random(D, rng);
        s.p = h.p;
        // Rank-compact: x -> #{y < D : H(y) < H(x)}, a permutation image of
        // the support since H is injective on [0, D).
        for (size_t i = 0; i < rel.size(); ++i)
            rel[i] = uint32_t(detail::count_hash_below(h.a, h.b, h.p, D, h(v.support[i])));
        break;
    }
    case SigmaKind::ReusePi:
        for (size_t i = 0; i < rel.size(); ++i) rel[i] = base(v.support[i]);
        break;
    }

    const auto& k0 = kern::ops();
    if (pi == PiKind::Exact) {
        for (uint32_t k = 0; k < K; ++k) {
            uint32_t shift = (k + 1) % D;
            uint32_t add = (D - shift) % D;
            s.values[k] =
                k0.min_shift_gather_u32(base.table.data(), D, add, rel.data(), rel.size());
        }
    } else {
        for (uint32_t k = 0; k < K; ++k) {
            Rng rng = make_stream(seed, Stream::Hash2U, {k});
            TwoUniversalHash h = TwoUniversalHash::random(D, rng);
            s.p = h.p;
            s.values[k] = k0.affine_mod_min_u32(h.a, h.b, h.p, rel.data(), rel.size());
        }
    }
    return s;
}

} // namespace coph
