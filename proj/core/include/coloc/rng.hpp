#pragma once

#include <cstdint>

namespace coloc {

// Counter based generator built on the splitmix64 finalizer. The stream is a
// pure function of (seed, counter), so the same seed produces the same draws
// on every platform and independent substreams can be forked with split().
// Uniform draws use the top 53 bits only; no libm calls are involved, which
// keeps generated instances bit identical across machines.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  // Independent substream addressed by tag. Streams with different tags do
  // not overlap for any practical draw count.
  Rng split(std::uint64_t tag) const {
    return Rng(mix(key_ + 0xbf58476d1ce4e5b9ull * (tag + 1)));
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  int uniform_int(int n) {
    const int v = static_cast<int>(uniform() * n);
    return v < n ? v : n - 1;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace coloc
