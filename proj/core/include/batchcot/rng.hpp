#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace batchcot {

// Portable draws on top of mt19937_64. The std distributions are
// implementation-defined, so every draw that feeds a recorded output goes
// through here to keep runs reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller (one value per call, no caching).
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Stable 64-bit mix used to derive per-item seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace batchcot
