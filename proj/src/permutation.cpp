#include "coph/permutation.hpp"

#include <cstring>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace coph {

Permutation Permutation::identity(uint32_t n) {
    Permutation p;
    p.table.resize(n);
    std::iota(p.table.begin(), p.table.end(), 0u);
    return p;
}

Permutation Permutation::random(uint32_t n, Rng& rng) {
    Permutation p = identity(n);
    for (uint32_t i = 0; i + 1 < n; ++i) {
        uint64_t j = i + rng.below(n - i);
        std::swap(p.table[i], p.table[j]);
    }
    return p;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.table.resize(table.size());
    for (uint32_t i = 0; i < table.size(); ++i) inv.table[table[i]] = i;
    return inv;
}

namespace {
void put_u64(std::ostream& out, uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = (unsigned char)(v >> (8 * i));
    out.write((const char*)buf, 8);
}

uint64_t get_u64(std::istream& in) {
    unsigned char buf[8];
    in.read((char*)buf, 8);
    if (!in) throw std::runtime_error("truncated input");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(buf[i]) << (8 * i);
    return v;
}
} // namespace

void Permutation::save(std::ostream& out) const {
    put_u64(out, table.size());
    for (uint32_t v : table) put_u64(out, v);
}

Permutation Permutation::load(std::istream& in) {
    uint64_t n = get_u64(in);
    if (n > UINT32_MAX) throw std::runtime_error("permutation too large");
    Permutation p;
    p.table.resize(size_t(n));
    std::vector<bool> seen(size_t(n), false);
    for (uint64_t i = 0; i < n; ++i) {
        uint64_t v = get_u64(in);
        if (v >= n || seen[size_t(v)]) throw std::runtime_error("not a permutation");
        seen[size_t(v)] = true;
        p.table[size_t(i)] = uint32_t(v);
    }
    return p;
}

void Permutation::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    save(out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Permutation Permutation::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load(in);
}

CirculantView::CirculantView(const Permutation& base, uint64_t shift)
    : base_(&base), n_(base.n()) {
    if (n_ == 0) throw std::invalid_argument("empty permutation");
    add_ = uint32_t((n_ - shift % n_) % n_);
}

} // namespace coph
