#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace rescomp {

/// splitmix64 finalizer; used to derive child-stream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Deterministic random source. All draws go through fixed bit-level
/// constructions on top of mt19937_64 so that a given seed produces the
/// same stream on every platform and standard library. (std::uniform_*
/// distributions and std::shuffle make no such guarantee.)
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Independent generator for a named substream of this one.
  Rng child(std::uint64_t stream) const { return Rng(mix_seed(seed_, stream)); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased uniform draw from {0, ..., n-1}; n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform integer on the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Fisher-Yates shuffle driven by uniform_index.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace rescomp
