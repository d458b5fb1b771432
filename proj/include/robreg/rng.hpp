#pragma once

#include <cstdint>
#include <random>

#include "robreg/normal.hpp"

namespace robreg {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic per-replication stream: the state depends only on
// (seed, stream), never on which worker thread runs the replication.
// Gaussians go through the inverse CDF so draws are reproducible across
// standard libraries (std::normal_distribution is not pinned by the
// standard; mt19937_64 and this mapping are).
class RepRng {
 public:
  RepRng(std::uint64_t seed, std::uint64_t stream)
      : eng_(splitmix64(splitmix64(seed) ^
                        (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

  // uniform on (0, 1), 53-bit resolution, never exactly 0 or 1
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double gaussian() { return norm_quantile(uniform01()); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace robreg
