#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace contmatch {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Folds a sequence of words into one key: h = mix64(h ^ w) per word,
// starting from mix64(first). This is the published seed-derivation hash
// (e.g. trial seeds are derive_seed({base_seed, M, trial})).
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t w : words) h = mix64(h ^ w);
  return h;
}

// Uniform in (0, 1], never zero.
inline double unit_open_left(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Standard normal deviate addressed by a key (Box-Muller, cosine branch).
inline double keyed_normal(std::uint64_t key) {
  const double u1 = unit_open_left(mix64(key));
  const double u2 = unit_open_left(mix64(key ^ 0xD1B54A32D192ED03ULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Sequential stream on top of the keyed generator. Identical output on
// every platform for a given seed.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(mix64(seed)) {}

  std::uint64_t next_u64() { return mix64(seed_ ^ mix64(counter_++)); }
  double uniform() { return unit_open_left(next_u64()) - 0x1.0p-53; }  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() { return keyed_normal(next_u64()); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace contmatch
