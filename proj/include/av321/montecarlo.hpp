#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "av321/perm.hpp"
#include "av321/rng.hpp"

namespace av321 {

/// Draws `samples` values, splitting the work over `streams` workers. Worker
/// s uses RngStream(seed, s) and produces a contiguous block; blocks are
/// concatenated in stream order, so the result depends only on
/// (seed, streams, samples).
template <typename T>
std::vector<T> parallel_draw(std::size_t samples, std::uint64_t seed, unsigned streams,
                             const std::function<T(RngStream &)> &draw) {
  if (streams == 0) streams = 1;
  std::vector<std::vector<T>> blocks(streams);
  auto work = [&](unsigned s) {
    const std::size_t begin = samples * s / streams;
    const std::size_t end = samples * (s + 1) / streams;
    RngStream rng(seed, s);
    blocks[s].reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) blocks[s].push_back(draw(rng));
  };
  if (streams == 1) {
    work(0);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned s = 0; s < streams; ++s) workers.emplace_back(work, s);
  }
  std::vector<T> out;
  out.reserve(samples);
  for (auto &b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Front/back fixed-point measures of uniform Av_n(321) draws.
std::vector<FrontBack> sample_perm_measures(int n, std::size_t samples, std::uint64_t seed,
                                            unsigned streams = 1);

/// Front/back measures of the limiting point process.
std::vector<FrontBack> sample_limit_measures(std::size_t samples, std::uint64_t seed,
                                             unsigned streams = 1);

struct ProportionEstimate {
  double estimate = 0.0;
  /// Wilson score half-width at 95%.
  double half_width = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

ProportionEstimate proportion(std::uint64_t hits, std::uint64_t samples, double z = 1.959964);

/// Monte Carlo estimate of P(some i in [a, b] has perm(i) = i) for uniform
/// perm in Av_n(321). Requires 1 <= a <= b <= n.
ProportionEstimate midrange_fp_probability(int n, int a, int b, std::size_t samples,
                                           RngStream &rng);

} // namespace av321
