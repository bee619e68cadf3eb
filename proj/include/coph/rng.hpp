#pragma once
// Splittable seeded randomness.
//
// Every random choice in the library is drawn from a stream addressed by
// (seed, role, path...). Streams with different addresses are independent;
// the same address always replays the same sequence, on every platform.
// Derivation is a splitmix64 chain over the address components, the stream
// itself is xoshiro256++. Bounded draws use rejection (no modulo bias).

#include <cstdint>
#include <initializer_list>

namespace coph {

// Role of a stream. Keeping these distinct is what makes e.g. the bin-split
// permutation independent of the donor choices at equal seeds.
enum class Stream : uint64_t {
    Sigma = 1,   // long split permutation / 2U split params
    Pi = 2,      // bin-width permutations
    Scan = 3,    // first-scan bin selection (UniformRandom strategy)
    Donor = 4,   // densification donor candidates, keyed by slot
    Trial = 5,   // per-trial replication
    Hash2U = 6,  // 2U hash parameter draws outside the splitter role
    PairGen = 7, // synthetic pair placement
    Misc = 8,
};

uint64_t splitmix64(uint64_t& state);

// One derivation step: fold `component` into `key`.
uint64_t derive_key(uint64_t key, uint64_t component);

class Rng {
  public:
    explicit Rng(uint64_t key);
    uint64_t next();
    // Uniform on [0, n), n >= 1.
    uint64_t below(uint64_t n);
    // Uniform on [0, 1).
    double unit();

  private:
    uint64_t s_[4];
};

// Stream at (seed, role, path...). `path` components are e.g. trial index,
// slot index; order matters.
Rng make_stream(uint64_t seed, Stream role, std::initializer_list<uint64_t> path = {});
uint64_t stream_key(uint64_t seed, Stream role, std::initializer_list<uint64_t> path = {});

} // namespace coph
