#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace av321 {

class RngStream;

/// Probability mass function on the nonnegative integers: a dense table of
/// atoms 0..table_size()-1 plus an optional analytic description of the mass
/// beyond the table.
class Pmf {
public:
  struct Tail {
    /// P(k) for any k; used past the table.
    std::function<double(std::int64_t)> atom;
    /// P(X >= k).
    std::function<double(std::int64_t)> survival;
  };

  Pmf() = default;
  explicit Pmf(std::vector<double> table, Tail tail = {}, std::string name = {});

  const std::string &name() const { return name_; }
  std::size_t table_size() const { return table_.size(); }
  bool has_tail() const { return static_cast<bool>(tail_.survival); }

  double at(std::int64_t k) const;
  /// P(X >= k).
  double survival(std::int64_t k) const;
  /// P(X <= k).
  double partial_sum(std::int64_t k) const;
  double total() const { return partial_sum(static_cast<std::int64_t>(table_.size()) - 1) + survival(static_cast<std::int64_t>(table_.size())); }

  /// Smallest k with P(X <= k) > u. Past the table, walks the analytic atoms.
  std::int64_t quantile(double u) const;
  /// quantile(u) when it lies inside the table, otherwise -1.
  std::int64_t table_quantile(double u) const;
  std::int64_t sample(RngStream &rng) const;

private:
  std::vector<double> table_;
  std::vector<double> cdf_;
  Tail tail_;
  std::string name_;
};

/// P(k) = p (1-p)^k on {0,1,...}. Throws std::invalid_argument unless 0 < p < 1.
Pmf geometric_pmf(double p, std::size_t table = 64);
/// k 2^{-k-1}, the size-biased Geometric(1/2) law (support k >= 1).
Pmf size_biased_geom_half_pmf(std::size_t table = 64);
/// Total progeny of a Geometric(1/2) Galton-Watson tree: C_{k-1} / 2^{2k-1}.
Pmf progeny_pmf(std::size_t table = 4096);
/// (4/9)(k+1)(1/3)^k, the sum of two independent Geometric(2/3).
Pmf negbin_2_one_third_pmf(std::size_t table = 64);
Pmf delta_pmf(std::int64_t at);

/// Name lookup used by the CLI: "geometric(p)", "size_biased_geom_half",
/// "progeny", "negbin_2_one_third".
Pmf theoretical_pmf(const std::string &name);

/// Exact convolution restricted to {0..cap}.
Pmf convolve_pmf(const Pmf &a, const Pmf &b, std::size_t cap);

/// First moment of a Geometric(p) table plus its closed-form tail moment.
double geometric_mean_with_tail(double p, std::size_t table);

/// P(#T >= k) for the Geometric(1/2) Galton-Watson total progeny,
/// binom(2k-2, k-1) / 4^{k-1}.
double progeny_survival(std::int64_t k);

} // namespace av321
