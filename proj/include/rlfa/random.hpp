#pragma once

#include <cstdint>

namespace rlfa::random {

// Counter-based generator. Every draw is a pure function of
// (seed, domain, a, b, draw index), so any cycle/sample/agent triple can be
// regenerated without replaying earlier draws.
//
//   key   = mix64(mix64(mix64(seed ^ (domain * kDomainMul)) + kGolden * (a + 1)) + kGolden * (b + 1))
//   u64_n = mix64(key + kGolden * n)                       for n = 1, 2, ...
//   unit  = (u64_n >> 11) * 2^-53                          in [0, 1)
//   open  = ((u64_n >> 11) + 1) * 2^-53                    in (0, 1]
//   normal: Box-Muller on (open, unit), cosine branch only: sqrt(-2 ln u1) cos(2 pi u2)
//
// mix64 is the SplitMix64 finalizer.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kDomainMul = 0xD1B54A32D192ED03ULL;

enum class Domain : std::uint64_t { Stream = 1, Handoff = 2, Calibration = 3 };

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t seed, Domain domain, std::uint64_t a,
                                   std::uint64_t b) noexcept {
  std::uint64_t k = mix64(seed ^ (static_cast<std::uint64_t>(domain) * kDomainMul));
  k = mix64(k + kGolden * (a + 1));
  return mix64(k + kGolden * (b + 1));
}

class CounterStream {
 public:
  constexpr CounterStream(std::uint64_t seed, Domain domain, std::uint64_t a, std::uint64_t b) noexcept
      : key_(derive_key(seed, domain, a, b)) {}

  constexpr std::uint64_t next_u64() noexcept { return mix64(key_ + kGolden * ++counter_); }

  double unit() noexcept;
  double open_unit() noexcept;
  double normal() noexcept;

  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rlfa::random
