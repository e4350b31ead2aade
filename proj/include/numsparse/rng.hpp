#pragma once

#include <cstdint>
#include <limits>

namespace numsparse {

// SplitMix64 finalizer; used both as the counter-mode output function and to
// derive child keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child key for stream `index` under `key`. Replicate k of an experiment
/// uses derive_key(master_seed, k), so results do not depend on scheduling.
constexpr std::uint64_t derive_key(std::uint64_t key, std::uint64_t index) noexcept {
  return mix64(mix64(key) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Counter-based generator: the i-th output is a pure function of (key, i).
/// Satisfies UniformRandomBitGenerator, but the samplers in this library only
/// use uniform01() so results are identical across standard libraries.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(mix64(key)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    return mix64(key_ ^ mix64(counter_++ * 0xd1342543de82ef95ULL + 1));
  }

  /// Uniform on the open interval (0, 1).
  double uniform01() noexcept { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  CounterRng split(std::uint64_t index) const noexcept { return CounterRng(derive_key(key_, index)); }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace numsparse
