#pragma once
// Sketches and scheme descriptors shared by the minwise hashing families.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace coph {

// Slot value marking an empty bin in raw (undensified) sketches. Also the
// on-disk encoding (all-ones word).
inline constexpr uint64_t EMPTY_SLOT = ~0ull;

enum class Family : uint8_t {
    MinHash,  // K independent long permutations
    CMinHash, // one long permutation used circulantly after an initial scramble
    OphRaw,   // bin split + first scan, empty slots left as EMPTY_SLOT
    OphCopy,  // empty slots copy the donor bin's first-scan hash
    OphReDen, // empty slots re-hashed with per-slot independent permutations
    Coph,     // empty slots re-hashed with circulant shifts of one bin-width permutation
};

// Source of the initial scramble / bin-split randomization.
enum class SigmaKind : uint8_t {
    Exact,   // uniform permutation of [0, D)
    TwoU,    // H(x) = (a*x+b) mod p
    ReusePi, // CMinHash (pi, pi) variant: the circulant base doubles as sigma
};

// Source of the per-slot hash applied after the scramble.
enum class PiKind : uint8_t {
    Exact, // explicit permutation (circulant family for CMinHash/Coph)
    TwoU,  // fresh 2U function per slot (CMinHash (sigma, 2U) variant)
};

enum class ScanStrategy : uint8_t {
    RoundRobin,    // slot k reads bin ((k-1) mod K) + 1
    UniformRandom, // slot k reads a bin drawn from the shared scan stream
};

enum class DonorStrategy : uint8_t {
    UniformShared, // donor drawn per slot from a shared stream, rejected into
                   // the vector's own non-empty set
    Rotation,      // next non-empty bin clockwise of the empty slot's bin
};

struct SchemeDesc {
    Family family = Family::Coph;
    SigmaKind sigma = SigmaKind::Exact;
    PiKind pi = PiKind::Exact;
    ScanStrategy scan = ScanStrategy::RoundRobin;
    DonorStrategy donor = DonorStrategy::UniformShared;

    std::string name() const;
    // Accepts the names produced by name(): minhash, cminhash, cminhash-pp,
    // cminhash-2u, cminhash-s2u, oph-raw, oph-copy, reden, reden-2u, coph,
    // coph-2u. Throws std::invalid_argument otherwise.
    static SchemeDesc parse(const std::string& s);

    bool operator==(const SchemeDesc&) const = default;
};

struct Sketch {
    SchemeDesc scheme;
    uint32_t D = 0;
    uint32_t K = 0; // bins (0 for the long-permutation families)
    uint32_t M = 0; // slots
    uint64_t p = 0; // 2U modulus when a 2U stage is present, else 0
    uint64_t seed = 0;
    std::vector<uint64_t> values; // size M; EMPTY_SLOT only in oph-raw

    // Format: "key=value" header lines (scheme, D, K, M, p, seed), a line
    // "---", then M little-endian u64 values with empties as all-ones words.
    void save(std::ostream& out) const;
    static Sketch load(std::istream& in); // throws on malformed input
    void save_file(const std::string& path) const;
    static Sketch load_file(const std::string& path);
};

} // namespace coph
