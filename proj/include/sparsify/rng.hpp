#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sparsify {

// Seeded 64-bit generator. Only the raw engine output is consumed; bounded
// integers and uniform reals are derived here rather than through the
// implementation-defined <random> distributions, so a given seed produces
// the same stream on every conforming standard library.
class Rng {
  __extension__ using u128 = unsigned __int128;

 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+lemire-bounded";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection: exactly uniform.
    u128 product = static_cast<u128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<u128>(next()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-trial seed: mix64(mix64(master) ^ index). Trials are independent
// streams that can be replayed individually.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ index);
}

}  // namespace sparsify
