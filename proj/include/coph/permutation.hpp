#pragma once
// Permutations of [0, n) and circulant (rotated) views.

#include "coph/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace coph {

struct Permutation {
    std::vector<uint32_t> table; // table[i] = image of i

    uint32_t n() const { return uint32_t(table.size()); }
    uint32_t operator()(uint32_t i) const { return table[i]; }

    static Permutation identity(uint32_t n);
    // Uniform via Fisher-Yates on the given stream.
    static Permutation random(uint32_t n, Rng& rng);
    Permutation inverse() const;

    // Binary format: u64 n, then n little-endian u64 indices.
    void save(std::ostream& out) const;
    static Permutation load(std::istream& in); // throws on malformed input
    void save_file(const std::string& path) const;
    static Permutation load_file(const std::string& path);
};

// Rightward rotation of a permutation's table by `shift`: evaluating index i
// yields base.table[(i - shift) mod n], so shift n is the identity and the
// views at shifts 0..n-1 form the circulant family of the base.
class CirculantView {
  public:
    CirculantView(const Permutation& base, uint64_t shift);
    uint32_t operator()(uint32_t i) const {
        uint32_t j = i + add_;
        if (j >= n_) j -= n_;
        return base_->table[j];
    }
    uint32_t n() const { return n_; }
    // The gather offset: (i - shift) mod n == (i + add) mod n.
    uint32_t add() const { return add_; }

  private:
    const Permutation* base_;
    uint32_t n_;
    uint32_t add_;
};

} // namespace coph
