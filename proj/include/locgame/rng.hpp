#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "locgame/errors.hpp"

namespace locgame {

// SplitMix64 (Steele/Lea/Flood). Chosen over std::mt19937_64 +
// std::uniform_* because the standard distributions are not specified
// bit-for-bit; this generator gives byte-identical streams on every
// platform, which the reproducibility guarantees depend on.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), unbiased via mask rejection.
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) throw ParameterError("next_below: bound must be positive");
    if (bound == 1) return 0;
    uint64_t mask = ~uint64_t{0} >> __builtin_clzll(bound - 1);
    uint64_t v;
    do {
      v = next() & mask;
    } while (v >= bound);
    return v;
  }

  // Uniform k-subset of {0,...,n-1}, ascending order (partial Fisher-Yates).
  std::vector<int> sample_subset(int n, int k);

 private:
  uint64_t state_;
};

inline std::vector<int> SplitMix64::sample_subset(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw ParameterError("sample_subset: need 0 <= k <= n");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    uint64_t j = i + next_below(static_cast<uint64_t>(n - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

// Derives independent child streams from a master seed: multiply the stream
// index by the odd constant 0x9E3779B97F4A7C15, add, xor-shift finalize.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + index * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace locgame
