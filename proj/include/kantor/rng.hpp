#pragma once

#include <cstdint>
#include <vector>

namespace kantor {

// Deterministic generator with platform-independent output.  The standard
// distributions are implementation-defined, so sampling is done directly on
// the raw 64-bit stream (splitmix64, then xorshift-style mixing via mt19937_64
// would also work; splitmix keeps it tiny and reproducible).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on the dyadic grid k * 2^-20 intersected with [lo, hi).  Sampled
  // values (and their sums, differences and convex combinations with dyadic
  // weights) stay exactly representable, so identity checks on max-plus
  // operators can be asserted with zero tolerance.
  double dyadic(double lo, double hi) {
    double span = hi - lo;
    auto cells = static_cast<std::uint64_t>(span * 1048576.0);
    std::uint64_t k = next_u64() % cells;
    return lo + static_cast<double>(k) * 0x1.0p-20;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  std::vector<double> simplex_point(int n) {  // full-support probability vector
    std::vector<double> w(n);
    double s = 0;
    for (auto& x : w) {
      x = 0.05 + uniform01();
      s += x;
    }
    for (auto& x : w) x /= s;
    return w;
  }

 private:
  std::uint64_t state_ = 0;
};

}  // namespace kantor
