#include "coph/binary_vector.hpp"

#include "coph/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace coph {

Ratio PairProfile::jaccard() const {
    if (f == 0) return {0, 1};
    uint64_t g = std::gcd(uint64_t(a), uint64_t(f));
    return {a / g, f / g};
}

BinaryVector make_vector(uint32_t dim, std::vector<uint32_t> support) {
    std::sort(support.begin(), support.end());
    if (!support.empty() && support.back() >= dim)
        throw std::invalid_argument("support index out of range");
    if (std::adjacent_find(support.begin(), support.end()) != support.end())
        throw std::invalid_argument("duplicate support index");
    return {dim, std::move(support)};
}

PairProfile profile_of(const BinaryVector& v, const BinaryVector& w) {
    if (v.dim != w.dim) throw std::invalid_argument("dimension mismatch");
    std::vector<uint32_t> inter;
    std::set_intersection(v.support.begin(), v.support.end(), w.support.begin(), w.support.end(),
                          std::back_inserter(inter));
    uint32_t a = uint32_t(inter.size());
    uint32_t f = uint32_t(v.support.size() + w.support.size()) - a;
    return {v.dim, f, a};
}

Ratio jaccard_exact(const BinaryVector& v, const BinaryVector& w) {
    PairProfile pr = profile_of(v, w);
    if (pr.f == 0) throw std::invalid_argument("empty union");
    return pr.jaccard();
}

std::pair<BinaryVector, BinaryVector> make_pair_vectors(uint32_t dim, uint32_t f, uint32_t a,
                                                        uint64_t seed) {
    if (a > f) throw std::invalid_argument("intersection larger than union");
    if (f > dim) throw std::invalid_argument("union larger than dimension");
    Rng rng = make_stream(seed, Stream::PairGen, {dim, f, a});
    // Partial Fisher-Yates: the first f entries are a uniform ordered sample.
    std::vector<uint32_t> pool(dim);
    std::iota(pool.begin(), pool.end(), 0u);
    for (uint32_t i = 0; i < f; ++i) {
        uint64_t j = i + rng.below(dim - i);
        std::swap(pool[i], pool[j]);
    }
    std::vector<uint32_t> sv, sw;
    for (uint32_t i = 0; i < a; ++i) {
        sv.push_back(pool[i]);
        sw.push_back(pool[i]);
    }
    for (uint32_t i = a; i < f; ++i) {
        if ((i - a) % 2 == 0)
            sv.push_back(pool[i]);
        else
            sw.push_back(pool[i]);
    }
    return {make_vector(dim, std::move(sv)), make_vector(dim, std::move(sw))};
}

} // namespace coph
