#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <random>

namespace av321 {

/// Seedable random stream. The engine is std::mt19937_64 initialised through
/// std::seed_seq from (seed, stream id); both are fully specified by the
/// standard, and the integer/real conversions below are done here rather
/// than with std::*_distribution, so a (seed, stream) pair yields the same
/// draws on every conforming platform. Distinct stream ids give distinct
/// seed_seq states and are treated as independent streams.
class RngStream {
public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, bound), bound >= 1. Lemire's multiply-shift with
  /// rejection, unbiased.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Geometric(1/2) on {0,1,2,...}: P(k) = 2^{-k-1}. Counts failed fair
  /// coin flips, 64 at a time.
  std::uint64_t geometric_half() {
    std::uint64_t failures = 0;
    for (;;) {
      const std::uint64_t bits = engine_();
      if (bits != 0) return failures + static_cast<std::uint64_t>(std::countr_zero(bits));
      failures += 64;
    }
  }

private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32), 0x321u};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

} // namespace av321
