#include "av321/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "av321/rng.hpp"

namespace av321 {

Pmf::Pmf(std::vector<double> table, Tail tail, std::string name)
    : table_(std::move(table)), tail_(std::move(tail)), name_(std::move(name)) {
  cdf_.resize(table_.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < table_.size(); ++k) {
    if (!(table_[k] >= 0.0 && table_[k] <= 1.0)) {
      throw std::invalid_argument("pmf mass outside [0,1] at atom " + std::to_string(k));
    }
    acc += table_[k];
    cdf_[k] = acc;
  }
  if (acc > 1.0 + 1e-12) throw std::invalid_argument("pmf table mass exceeds 1");
}

double Pmf::at(std::int64_t k) const {
  if (k < 0) return 0.0;
  if (static_cast<std::size_t>(k) < table_.size()) return table_[k];
  return tail_.atom ? tail_.atom(k) : 0.0;
}

double Pmf::survival(std::int64_t k) const {
  const auto size = static_cast<std::int64_t>(table_.size());
  const double beyond = tail_.survival ? tail_.survival(size) : 0.0;
  if (k >= size) return tail_.survival ? tail_.survival(k) : 0.0;
  k = std::max<std::int64_t>(k, 0);
  // Summed from the small end so that tiny tails are not lost to cancellation.
  double acc = beyond;
  for (std::int64_t j = size - 1; j >= k; --j) acc += table_[j];
  return acc;
}

double Pmf::partial_sum(std::int64_t k) const {
  if (k < 0) return 0.0;
  const auto size = static_cast<std::int64_t>(table_.size());
  if (k < size) return cdf_[k];
  double acc = cdf_.empty() ? 0.0 : cdf_.back();
  if (tail_.survival) acc += tail_.survival(size) - tail_.survival(k + 1);
  return acc;
}

std::int64_t Pmf::table_quantile(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return it == cdf_.end() ? -1 : it - cdf_.begin();
}

std::int64_t Pmf::sample(RngStream &rng) const { return quantile(rng.uniform()); }

std::int64_t Pmf::quantile(double u) const {
  if (const std::int64_t k = table_quantile(u); k >= 0) return k;
  auto k = static_cast<std::int64_t>(table_.size());
  if (!tail_.atom) return k - 1;
  double acc = cdf_.empty() ? 0.0 : cdf_.back();
  for (std::int64_t steps = 0; steps < 1'000'000; ++steps, ++k) {
    acc += tail_.atom(k);
    if (u < acc) return k;
  }
  return k;
}

Pmf geometric_pmf(double p, std::size_t table) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("geometric parameter must lie in (0,1), got " + std::to_string(p));
  }
  const double q = 1.0 - p;
  std::vector<double> atoms(table);
  for (std::size_t k = 0; k < table; ++k) atoms[k] = p * std::pow(q, static_cast<double>(k));
  Pmf::Tail tail{
      [p, q](std::int64_t k) { return k < 0 ? 0.0 : p * std::pow(q, static_cast<double>(k)); },
      [q](std::int64_t k) { return k <= 0 ? 1.0 : std::pow(q, static_cast<double>(k)); }};
  return Pmf(std::move(atoms), std::move(tail), "geometric(" + std::to_string(p) + ")");
}

double geometric_mean_with_tail(double p, std::size_t table) {
  const double q = 1.0 - p;
  double mean = 0.0;
  for (std::size_t k = 0; k < table; ++k) mean += static_cast<double>(k) * p * std::pow(q, static_cast<double>(k));
  // sum_{k >= K} k p q^k = q^K (K + q/p)
  const double K = static_cast<double>(table);
  return mean + std::pow(q, K) * (K + q / p);
}

Pmf size_biased_geom_half_pmf(std::size_t table) {
  auto atom = [](std::int64_t k) {
    return k < 1 ? 0.0 : static_cast<double>(k) * std::ldexp(1.0, static_cast<int>(-k - 1));
  };
  std::vector<double> atoms(table);
  for (std::size_t k = 0; k < table; ++k) atoms[k] = atom(static_cast<std::int64_t>(k));
  // sum_{k >= K} k 2^{-k-1} = (K+1) 2^{-K}
  Pmf::Tail tail{atom, [](std::int64_t k) {
                   if (k <= 1) return 1.0;
                   return static_cast<double>(k + 1) * std::ldexp(1.0, static_cast<int>(-k));
                 }};
  return Pmf(std::move(atoms), std::move(tail), "size_biased_geom_half");
}

double progeny_survival(std::int64_t k) {
  if (k <= 1) return 1.0;
  const std::int64_t m = k - 1;
  if (m <= 4096) {
    double acc = 1.0;
    for (std::int64_t j = 1; j <= m; ++j) acc *= static_cast<double>(2 * j - 1) / static_cast<double>(2 * j);
    return acc;
  }
  // binom(2m,m)/4^m = Gamma(m+1/2) / (Gamma(1/2) Gamma(m+1))
  const double md = static_cast<double>(m);
  return boost::math::tgamma_delta_ratio(md + 0.5, 0.5) * std::numbers::inv_sqrtpi;
}

namespace {

double progeny_atom(std::int64_t k) {
  if (k < 1) return 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(std::lgamma(2 * kd - 1) - std::lgamma(kd) - std::lgamma(kd + 1) -
                  (2 * kd - 1) * std::numbers::ln2);
}

} // namespace

Pmf progeny_pmf(std::size_t table) {
  std::vector<double> atoms(table, 0.0);
  // P(1) = 1/2, P(k+1) = P(k) (2k-1) / (2(k+1))
  if (table > 1) atoms[1] = 0.5;
  for (std::size_t k = 1; k + 1 < table; ++k) {
    atoms[k + 1] = atoms[k] * static_cast<double>(2 * k - 1) / static_cast<double>(2 * (k + 1));
  }
  Pmf::Tail tail{progeny_atom, progeny_survival};
  return Pmf(std::move(atoms), std::move(tail), "progeny");
}

Pmf negbin_2_one_third_pmf(std::size_t table) {
  auto atom = [](std::int64_t k) {
    return k < 0 ? 0.0 : 4.0 / 9.0 * static_cast<double>(k + 1) * std::pow(1.0 / 3.0, static_cast<double>(k));
  };
  std::vector<double> atoms(table);
  for (std::size_t k = 0; k < table; ++k) atoms[k] = atom(static_cast<std::int64_t>(k));
  // sum_{k >= K} (4/9)(k+1) 3^{-k} = 3^{-K} ((2/3)(K+1) + 1/3)
  Pmf::Tail tail{atom, [](std::int64_t k) {
                   if (k <= 0) return 1.0;
                   const double kd = static_cast<double>(k);
                   return std::pow(1.0 / 3.0, kd) * (2.0 / 3.0 * (kd + 1) + 1.0 / 3.0);
                 }};
  return Pmf(std::move(atoms), std::move(tail), "negbin_2_one_third");
}

Pmf delta_pmf(std::int64_t at) {
  if (at < 0) throw std::invalid_argument("delta_pmf: atom must be nonnegative");
  std::vector<double> atoms(static_cast<std::size_t>(at) + 1, 0.0);
  atoms.back() = 1.0;
  return Pmf(std::move(atoms), {}, "delta(" + std::to_string(at) + ")");
}

Pmf theoretical_pmf(const std::string &name) {
  if (name == "size_biased_geom_half") return size_biased_geom_half_pmf();
  if (name == "progeny") return progeny_pmf();
  if (name == "negbin_2_one_third") return negbin_2_one_third_pmf();
  const std::string prefix = "geometric(";
  if (name.starts_with(prefix) && name.ends_with(")")) {
    const std::string arg = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    double p = 0.0;
    const auto slash = arg.find('/');
    try {
      if (slash != std::string::npos) {
        p = std::stod(arg.substr(0, slash)) / std::stod(arg.substr(slash + 1));
      } else {
        p = std::stod(arg);
      }
    } catch (const std::exception &) {
      throw std::invalid_argument("malformed geometric parameter: " + name);
    }
    return geometric_pmf(p);
  }
  throw std::invalid_argument("unknown distribution: " + name);
}

Pmf convolve_pmf(const Pmf &a, const Pmf &b, std::size_t cap) {
  std::vector<double> out(cap + 1, 0.0);
  for (std::size_t k = 0; k <= cap; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
      acc += a.at(static_cast<std::int64_t>(i)) * b.at(static_cast<std::int64_t>(k - i));
    }
    out[k] = acc;
  }
  return Pmf(std::move(out), {}, "(" + a.name() + ")*(" + b.name() + ")");
}

} // namespace av321
