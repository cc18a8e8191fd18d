#pragma once

// SplitMix64 (Steele, Lea & Flood 2014) keyed by a (master, stream) pair.
//
// The generator state is the sum of the two mixed halves of the key, and each
// output is mix64 of the state after a Weyl increment. Bounded draws reject
// the biased tail and reduce modulo the bound, so outputs are bit-identical on
// every platform regardless of the standard library in use.

#include <cstdint>
#include <limits>

namespace bot {

struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

inline constexpr std::uint64_t kDefaultMasterSeed = 0x5EED'B075'2026'0001ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit SplitMix64(Seed seed)
      : state_(mix64(seed.master) + mix64(seed.stream ^ 0x243F6A8885A308D3ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform integer in [0, bound). bound must be positive.
  constexpr std::uint64_t below(std::uint64_t bound) {
    // Largest multiple of bound representable, minus one.
    const std::uint64_t limit = max() - (max() % bound + 1) % bound;
    std::uint64_t x = (*this)();
    while (x > limit) x = (*this)();
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  constexpr double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace bot
