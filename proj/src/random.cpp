#include "rlfa/random.hpp"

#include <cmath>
#include <numbers>

namespace rlfa::random {

namespace {
constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
}

double CounterStream::unit() noexcept { return static_cast<double>(next_u64() >> 11) * kInv53; }

double CounterStream::open_unit() noexcept {
  return static_cast<double>((next_u64() >> 11) + 1) * kInv53;
}

double CounterStream::normal() noexcept {
  const double u1 = open_unit();
  const double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rlfa::random
