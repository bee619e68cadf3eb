#include "coph/oph.hpp"

#include "coph/kernels.hpp"
#include "coph/permutation.hpp"
#include "coph/two_universal.hpp"

#include <algorithm>
#include <stdexcept>

namespace coph {

namespace {

bool binned_family(Family f) {
    return f == Family::OphRaw || f == Family::OphCopy || f == Family::OphReDen ||
           f == Family::Coph;
}

uint32_t min_of(const std::vector<uint32_t>& xs) {
    return *std::min_element(xs.begin(), xs.end());
}

uint32_t min_through(const std::vector<uint32_t>& table, const std::vector<uint32_t>& xs) {
    uint32_t best = UINT32_MAX;
    for (uint32_t x : xs) best = std::min(best, table[x]);
    return best;
}

// Slots at or beyond the first round (or any slot under a 2U split) hash
// through an explicit fresh bin-width permutation; first-round slots of an
// exact round-robin split reuse the split's own within-bin order.
bool implicit_slot(const BinLayout& layout, const SchemeDesc& scheme, uint32_t k0) {
    return layout.sigma == SigmaKind::Exact && scheme.scan == ScanStrategy::RoundRobin &&
           k0 < layout.K;
}

Permutation slot_perm(uint32_t d, uint64_t seed, uint32_t k0) {
    Rng rng = make_stream(seed, Stream::Pi, {k0});
    return Permutation::random(d, rng);
}

} // namespace

BinLayout bin_split(const BinaryVector& v, uint32_t K, SigmaKind sigma, uint64_t seed) {
    if (K == 0) throw std::invalid_argument("bin_split: K must be positive");
    if (v.dim == 0 || v.dim % K != 0)
        throw std::invalid_argument("bin_split: K must divide D");
    if (sigma == SigmaKind::ReusePi)
        throw std::invalid_argument("bin_split: not a split kind");

    BinLayout layout;
    layout.D = v.dim;
    layout.K = K;
    layout.d = v.dim / K;
    layout.sigma = sigma;
    layout.occupied.resize(K);

    if (sigma == SigmaKind::Exact) {
        Rng rng = make_stream(seed, Stream::Sigma);
        Permutation sg = Permutation::random(v.dim, rng);
        layout.pattern.resize(K);
        for (auto& p : layout.pattern) p.reserve(layout.d);
        for (uint32_t j = 0; j < v.dim; ++j) {
            uint32_t img = sg(j);
            layout.pattern[img / layout.d].push_back(img % layout.d);
        }
        for (uint32_t s : v.support) {
            uint32_t img = sg(s);
            layout.occupied[img / layout.d].push_back(img % layout.d);
        }
    } else {
        Rng rng = make_stream(seed, Stream::Sigma);
        TwoUniversalHash h = TwoUniversalHash::random(v.dim, rng);
        layout.p = h.p;
        for (uint32_t s : v.support) {
            uint32_t q = uint32_t((unsigned __int128)(h(s)) * v.dim / h.p);
            layout.occupied[q / layout.d].push_back(q % layout.d);
        }
    }
    for (uint32_t b = 0; b < K; ++b)
        if (!layout.occupied[b].empty()) layout.nonempty.push_back(b);
    return layout;
}

uint32_t coph_shift(uint32_t slot1, uint32_t d, uint32_t D, uint32_t K, uint32_t M) {
    uint64_t s = slot1;
    if (uint64_t(M) * K > D) s += slot1 / K;
    return uint32_t(s % d);
}

ScanResult oph_first_scan(const BinLayout& layout, const SchemeDesc& scheme, uint32_t M,
                          uint64_t seed) {
    if (!binned_family(scheme.family))
        throw std::invalid_argument("oph_first_scan: long-permutation family");
    if (M == 0) throw std::invalid_argument("oph_first_scan: M must be positive");
    const uint32_t K = layout.K, d = layout.d;

    ScanResult scan;
    scan.values.assign(M, EMPTY_SLOT);
    scan.scan_bin.resize(M);
    if (scheme.scan == ScanStrategy::RoundRobin) {
        for (uint32_t k0 = 0; k0 < M; ++k0) scan.scan_bin[k0] = k0 % K;
    } else {
        Rng rng = make_stream(seed, Stream::Scan);
        for (uint32_t k0 = 0; k0 < M; ++k0) scan.scan_bin[k0] = uint32_t(rng.below(K));
    }

    Permutation base;
    if (scheme.family == Family::Coph) {
        Rng rng = make_stream(seed, Stream::Pi);
        base = Permutation::random(d, rng);
    }
    for (uint32_t k0 = 0; k0 < M; ++k0) {
        uint32_t b = scan.scan_bin[k0];
        const auto& occ = layout.occupied[b];
        if (occ.empty()) continue;
        uint32_t m;
        if (scheme.family == Family::Coph) {
            uint32_t shift = coph_shift(k0 + 1, d, layout.D, K, M);
            uint32_t add = (d - shift) % d;
            m = kern::ops().min_shift_gather_u32(base.table.data(), d, add, occ.data(),
                                                 occ.size());
        } else if (implicit_slot(layout, scheme, k0)) {
            m = min_of(occ);
        } else {
            m = min_through(slot_perm(d, seed, k0).table, occ);
        }
        scan.values[k0] = uint64_t(b) * d + m;
    }
    return scan;
}

void densify(ScanResult& scan, const BinLayout& layout, const SchemeDesc& scheme,
             uint64_t seed) {
    if (scheme.family == Family::OphRaw) return;
    const uint32_t K = layout.K, d = layout.d;
    const uint32_t M = uint32_t(scan.values.size());
    if (scheme.family == Family::OphCopy &&
        (M != K || scheme.scan != ScanStrategy::RoundRobin))
        throw std::invalid_argument("densify: copying needs M == K round-robin slots");

    bool any_empty = false;
    for (uint64_t v : scan.values) any_empty |= (v == EMPTY_SLOT);
    if (!any_empty) return;
    if (layout.empty_for_vector()) throw std::runtime_error("densify: every bin is empty");

    Permutation base;
    if (scheme.family == Family::Coph) {
        Rng rng = make_stream(seed, Stream::Pi);
        base = Permutation::random(d, rng);
    }
    for (uint32_t k0 = 0; k0 < M; ++k0) {
        if (scan.values[k0] != EMPTY_SLOT) continue;
        uint32_t donor;
        if (scheme.donor == DonorStrategy::UniformShared) {
            Rng rng = make_stream(seed, Stream::Donor, {k0});
            do donor = uint32_t(rng.below(K));
            while (layout.occupied[donor].empty());
        } else {
            donor = scan.scan_bin[k0];
            do donor = (donor + 1) % K;
            while (layout.occupied[donor].empty());
        }
        const auto& occ = layout.occupied[donor];
        uint32_t m;
        switch (scheme.family) {
        case Family::OphCopy:
            scan.values[k0] = scan.values[donor];
            continue;
        case Family::Coph: {
            uint32_t shift = coph_shift(k0 + 1, d, layout.D, K, M);
            uint32_t add = (d - shift) % d;
            m = kern::ops().min_shift_gather_u32(base.table.data(), d, add, occ.data(),
                                                 occ.size());
            break;
        }
        default: // OphReDen
            if (implicit_slot(layout, scheme, k0))
                m = min_through(layout.pattern[k0], occ);
            else
                m = min_through(slot_perm(d, seed, k0).table, occ);
        }
        scan.values[k0] = uint64_t(donor) * d + m;
    }
}

Sketch oph_sketch(const BinaryVector& v, const SchemeDesc& scheme, uint32_t K, uint32_t M,
                  uint64_t seed) {
    if (!binned_family(scheme.family))
        throw std::invalid_argument("oph_sketch: long-permutation family");
    if (scheme.pi != PiKind::Exact)
        throw std::invalid_argument("oph_sketch: binned families use explicit bin-width permutations");

    BinLayout layout = bin_split(v, K, scheme.sigma, seed);
    ScanResult scan = oph_first_scan(layout, scheme, M, seed);
    densify(scan, layout, scheme, seed);

    Sketch s;
    s.scheme = scheme;
    s.D = v.dim;
    s.K = K;
    s.M = M;
    s.p = layout.p;
    s.seed = seed;
    s.values = std::move(scan.values);
    return s;
}

} // namespace coph
