#pragma once

#include <cstdint>
#include <limits>

namespace mixest {

/// Counter-based generator: the n-th output is a fixed hash of
/// (seed, stream, n), so independent streams (one per trial or restart) are
/// reproducible regardless of evaluation order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  result_type operator()() { return next(); }
  result_type next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }
  double normal();
  double exponential();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace mixest
