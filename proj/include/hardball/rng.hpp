#pragma once

#include <cstdint>
#include <random>

namespace hardball {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Per-trial seed derivation: independent streams that merge
// deterministically by trial index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(master ^ splitmix64(trial + 0x51ed270b7a04a9a1ull));
}

// mt19937_64 with explicitly defined integer/real mappings, so sampled
// values do not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<long>(r % span);
  }

  double uniform01() { return (next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hardball
