#include "av321/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "av321/samplers.hpp"

namespace av321 {

std::vector<FrontBack> sample_perm_measures(int n, std::size_t samples, std::uint64_t seed,
                                            unsigned streams) {
  return parallel_draw<FrontBack>(samples, seed, streams, [n](RngStream &rng) {
    return fixed_point_measures(uniform_avoider_321(n, rng));
  });
}

std::vector<FrontBack> sample_limit_measures(std::size_t samples, std::uint64_t seed,
                                             unsigned streams) {
  return parallel_draw<FrontBack>(samples, seed, streams, [](RngStream &rng) {
    LimitProcessSample s = sample_limit_process(rng);
    return FrontBack{std::move(s.front), std::move(s.back)};
  });
}

ProportionEstimate proportion(std::uint64_t hits, std::uint64_t samples, double z) {
  ProportionEstimate out;
  out.hits = hits;
  out.samples = samples;
  if (samples == 0) return out;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  out.estimate = p;
  out.half_width = z / (1.0 + z * z / n) * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return out;
}

ProportionEstimate midrange_fp_probability(int n, int a, int b, std::size_t samples,
                                           RngStream &rng) {
  if (!(1 <= a && a <= b && b <= n)) {
    throw std::invalid_argument("midrange_fp_probability: need 1 <= a <= b <= n, got a=" +
                                std::to_string(a) + " b=" + std::to_string(b) +
                                " n=" + std::to_string(n));
  }
  std::uint64_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Permutation perm = uniform_avoider_321(n, rng);
    for (int i = a; i <= b; ++i) {
      if (perm(i) == i) {
        ++hits;
        break;
      }
    }
  }
  return proportion(hits, samples);
}

} // namespace av321
