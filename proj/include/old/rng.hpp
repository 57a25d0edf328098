#pragma once

#include <cstdint>
#include <initializer_list>

namespace old {

// Finalizer from splitmix64. Stateless; avalanches all input bits.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// splitmix64 stream. Every randomized component in the toolkit draws from
// this generator so that artifacts are bit-identical across platforms;
// std::uniform_* distributions are implementation-defined and unusable here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit mantissa.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n), unbiased (Lemire multiply-shift with rejection).
  std::uint64_t next_below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

// Deterministic seed for an independent task stream, e.g.
// derive_seed(seed, {kWalkTag, walk_index, start_node}).
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t v : path) h = mix64(h ^ (mix64(v) + 0x9e3779b97f4a7c15ULL));
  return h;
}

// Stateless uniform in [0, 1) keyed by (seed, path...). The SIR simulator
// keys each draw by contact identity so coupled runs see aligned draws.
inline double keyed_uniform(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> path) {
  return static_cast<double>(derive_seed(seed, path) >> 11) * 0x1.0p-53;
}

}  // namespace old
