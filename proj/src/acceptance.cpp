#include "av321/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

#include "av321/bijection.hpp"
#include "av321/empirical.hpp"
#include "av321/exact.hpp"
#include "av321/montecarlo.hpp"
#include "av321/pmf.hpp"
#include "av321/report.hpp"
#include "av321/samplers.hpp"

namespace av321 {

namespace {

constexpr int kLargeN = 2000;
constexpr std::size_t kSamples = 100'000;
constexpr std::size_t kLimitDraws = 1'000'000;

std::uint64_t catalan(int n) {
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(5);
  os << x;
  return os.str();
}

// Shared draws reused by several criteria, created on first use.
class SampleCache {
public:
  explicit SampleCache(const AcceptanceOptions &opt) : opt_(opt) {}

  const std::vector<FrontBack> &large_perm() {
    if (!large_perm_) large_perm_ = sample_perm_measures(kLargeN, kSamples, opt_.seed, opt_.streams);
    return *large_perm_;
  }
  const std::vector<FrontBack> &limit() {
    if (!limit_) limit_ = sample_limit_measures(kLimitDraws, opt_.seed, opt_.streams);
    return *limit_;
  }

private:
  const AcceptanceOptions &opt_;
  std::optional<std::vector<FrontBack>> large_perm_;
  std::optional<std::vector<FrontBack>> limit_;
};

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome bijection_exactness() {
  const Permutation p321({3, 2, 1});
  bool ok = true;
  std::ostringstream detail;
  detail << "sizes";
  for (int n = 1; n <= 8; ++n) {
    std::set<Permutation> image;
    std::size_t trees = 0;
    bool round_trip = true;
    enumerate_trees(static_cast<std::size_t>(n) + 1, [&](const PlaneTree &t) {
      ++trees;
      const Permutation perm = tree_to_perm(t);
      image.insert(perm);
      if (!(perm_to_tree(perm) == t)) round_trip = false;
    });
    const auto avoiders = list_avoiders(n, p321);
    const std::set<Permutation> expected(avoiders.begin(), avoiders.end());
    for (const auto &perm : avoiders) {
      if (!(tree_to_perm(perm_to_tree(perm)) == perm)) round_trip = false;
    }
    const bool sizes_ok = trees == catalan(n) && image.size() == trees && image == expected;
    ok = ok && sizes_ok && round_trip;
    detail << ' ' << image.size();
  }
  detail << " (expect 1 2 5 14 42 132 429 1430)";
  return {ok, detail.str()};
}

// Positions of height-one peaks, read off the Dyck word: the number of up
// steps up to and including the peak.
std::vector<std::int64_t> height_one_peak_positions(const DyckPath &path) {
  std::vector<std::int64_t> out;
  int height = 0;
  std::int64_t ups = 0;
  const std::string &w = path.steps();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 'U') {
      ++height;
      ++ups;
      if (height == 1 && i + 1 < w.size() && w[i + 1] == 'D') out.push_back(ups);
    } else {
      --height;
    }
  }
  return out;
}

Outcome fixed_point_correspondence() {
  std::size_t checked = 0, mismatches = 0;
  for (std::size_t v = 2; v <= 9; ++v) {
    enumerate_trees(v, [&](const PlaneTree &t) {
      ++checked;
      const Permutation perm = tree_to_perm(t);
      const FixedPointMeasure from_perm = fixed_points(perm);

      const LeafStats stats = leaf_stats(t);
      std::vector<std::int64_t> from_leaves;
      for (std::size_t i = 0; i < stats.k(); ++i) {
        if (stats.p[i] == 1) from_leaves.push_back(stats.b(i));
      }
      const DyckPath path = dyck_from_tree(t);
      const auto from_peaks = height_one_peak_positions(path);

      const bool agree = FixedPointMeasure(from_leaves) == from_perm &&
                         FixedPointMeasure(from_peaks) == from_perm &&
                         static_cast<std::size_t>(path.height_one_peaks()) == from_perm.mass() &&
                         tree_fixed_point_measures(t) == fixed_point_measures(perm);
      if (!agree) ++mismatches;
    });
  }
  return {mismatches == 0, std::to_string(checked) + " trees, " + std::to_string(mismatches) + " mismatches"};
}

EmpiricalDist fixed_point_counts(int n, std::size_t samples, const AcceptanceOptions &opt) {
  EmpiricalDist dist;
  for (const auto &fb : sample_perm_measures(n, samples, opt.seed, opt.streams)) {
    dist.add(static_cast<std::int64_t>(fb.front.mass() + fb.back.mass()));
  }
  return dist;
}

Outcome exact_vs_sampler(const AcceptanceOptions &opt) {
  bool ok = true;
  std::ostringstream detail;
  for (int n : {5, 8, 10}) {
    const Pmf exact = to_pmf(exact_fp_distribution(n, Permutation({3, 2, 1})));
    const double tv = tv_distance(fixed_point_counts(n, kSamples, opt), exact);
    ok = ok && tv <= 0.02;
    detail << "n=" << n << " tv=" << fmt(tv) << " ";
  }
  detail << "(<= 0.02)";
  return {ok, detail.str()};
}

Outcome geometric_counts(SampleCache &cache) {
  EmpiricalDist front, back;
  JointEmpirical joint;
  for (const auto &fb : cache.large_perm()) {
    const auto f = static_cast<std::int64_t>(fb.front.mass());
    const auto b = static_cast<std::int64_t>(fb.back.mass());
    front.add(f);
    back.add(b);
    joint.add({f, b});
  }
  const Pmf geom = geometric_pmf(2.0 / 3.0);
  const double tv_front = tv_distance(front, geom);
  const double tv_back = tv_distance(back, geom);
  const ChiSquareResult chi = chi_square_independence(joint, 5.0);
  const bool ok = tv_front <= 0.03 && tv_back <= 0.03 && chi.p_value > 0.001;
  return {ok, "tv_front=" + fmt(tv_front) + " tv_back=" + fmt(tv_back) + " (<= 0.03), chi2=" +
                  fmt(chi.statistic) + " df=" + std::to_string(chi.degrees) + " p=" + fmt(chi.p_value) +
                  " (> 0.001)"};
}

Outcome negbin_total(SampleCache &cache) {
  EmpiricalDist total;
  double sum = 0.0;
  for (const auto &fb : cache.large_perm()) {
    const auto t = static_cast<std::int64_t>(fb.front.mass() + fb.back.mass());
    total.add(t);
    sum += static_cast<double>(t);
  }
  const double mean = sum / static_cast<double>(total.total());
  const Pmf negbin = negbin_2_one_third_pmf();
  const double tv = tv_distance(total, negbin);

  const Pmf geom = geometric_pmf(2.0 / 3.0);
  const Pmf conv = convolve_pmf(geom, geom, 40);
  double max_diff = 0.0;
  for (std::int64_t k = 0; k <= 40; ++k) max_diff = std::max(max_diff, std::abs(conv.at(k) - negbin.at(k)));

  const bool ok = tv <= 0.03 && mean >= 0.95 && mean <= 1.05 && max_diff <= 1e-12;
  return {ok, "tv=" + fmt(tv) + " (<= 0.03), mean=" + fmt(mean) + " (in [0.95,1.05]), convolution max diff=" +
                  fmt(max_diff) + " (<= 1e-12)"};
}

Outcome fixed_point_locations(SampleCache &cache) {
  bool exact_ok = true;
  for (int n = 1; n <= 11; ++n) {
    const Rational expected(static_cast<std::int64_t>(catalan(n - 1)), static_cast<std::int64_t>(catalan(n)));
    if (exact_fixed_at_one(n) != expected) exact_ok = false;
  }
  exact_ok = exact_ok && exact_fixed_at_one(4) == Rational(5, 14);

  const auto &limit = cache.limit();
  std::uint64_t limit_hits = 0;
  for (const auto &fb : limit) limit_hits += fb.front.contains(1) ? 1 : 0;
  const double limit_p = static_cast<double>(limit_hits) / static_cast<double>(limit.size());

  const auto &perm = cache.large_perm();
  std::uint64_t perm_hits = 0;
  for (const auto &fb : perm) perm_hits += fb.front.contains(1) ? 1 : 0;
  const double perm_p = static_cast<double>(perm_hits) / static_cast<double>(perm.size());

  Tally<std::uint64_t> perm_window, limit_window;
  for (const auto &fb : perm) perm_window.add(fb.front.window_mask(10));
  for (std::size_t i = 0; i < kSamples; ++i) limit_window.add(limit[i].front.window_mask(10));
  const double tv = tv_distance(perm_window, limit_window);

  const bool ok = exact_ok && std::abs(limit_p - 0.25) <= 0.005 && std::abs(perm_p - 0.25) <= 0.01 && tv <= 0.03;
  return {ok, std::string("exact C_{n-1}/C_n n<=11: ") + (exact_ok ? "ok" : "MISMATCH") +
                  ", limit P(atom at 1)=" + fmt(limit_p) + " (0.25 +- 0.005), n=2000 P(tau(1)=1)=" +
                  fmt(perm_p) + " (0.25 +- 0.01), window[1,10] tv=" + fmt(tv) + " (<= 0.03)"};
}

Outcome midrange_vanishing(SampleCache &cache) {
  const std::vector<int> as{5, 10, 25, 50};
  std::vector<std::uint64_t> hits(as.size(), 0);
  for (const auto &fb : cache.large_perm()) {
    const std::int64_t front_max = fb.front.positions().empty() ? 0 : fb.front.positions().back();
    const std::int64_t back_max = fb.back.positions().empty() ? 0 : fb.back.positions().back();
    for (std::size_t j = 0; j < as.size(); ++j) {
      // Position i lies in [a, n-a] iff i >= a on the front or n+1-i >= a+1 on the back.
      if (front_max >= as[j] || back_max >= as[j] + 1) ++hits[j];
    }
  }
  std::vector<ProportionEstimate> est;
  std::ostringstream detail;
  for (std::size_t j = 0; j < as.size(); ++j) {
    est.push_back(proportion(hits[j], kSamples));
    detail << "a=" << as[j] << ":" << fmt(est.back().estimate) << "+-" << fmt(est.back().half_width) << " ";
  }
  bool monotone = true;
  for (std::size_t i = 1; i < est.size(); ++i) {
    if (est[i].estimate > est[i - 1].estimate + est[i].half_width + est[i - 1].half_width) monotone = false;
  }
  const bool ok = est.back().estimate <= 0.05 && monotone;
  detail << "(a=50 <= 0.05, nonincreasing: " << (monotone ? "yes" : "no")
         << "; exact a=50 value " << fmt(exact_midrange_probability(kLargeN, 50, kLargeN - 50)) << ")";
  return {ok, detail.str()};
}

Outcome local_limit(const AcceptanceOptions &opt) {
  EmpiricalDist degree;
  Tally<std::string> uniform_shapes, kesten_shapes;
  {
    RngStream rng(opt.seed, 0);
    for (std::size_t i = 0; i < kSamples; ++i) {
      const PlaneTree t = uniform_tree(501, rng);
      degree.add(t.degree(0));
      uniform_shapes.add(format_tree(truncate_tree(t, 1)));
    }
  }
  {
    RngStream rng(opt.seed, 1);
    for (std::size_t i = 0; i < kSamples; ++i) kesten_shapes.add(format_tree(kesten_truncated(1, rng).tree));
  }
  const double tv_degree = tv_distance(degree, size_biased_geom_half_pmf());
  const double tv_shapes = tv_distance(uniform_shapes, kesten_shapes);
  const bool ok = tv_degree <= 0.02 && tv_shapes <= 0.05;
  return {ok, "root degree tv=" + fmt(tv_degree) + " (<= 0.02), height-1 truncation tv=" + fmt(tv_shapes) +
                  " (<= 0.05)"};
}

Outcome progeny_law(const AcceptanceOptions &opt) {
  EmpiricalDist draws;
  {
    RngStream rng(opt.seed, 0);
    for (std::size_t i = 0; i < kLimitDraws; ++i) draws.add(sample_progeny(rng));
  }
  const Pmf progeny = progeny_pmf();
  const double tv = tv_distance_window(draws, progeny, 1, 50);

  EmpiricalDist gw_sizes, table_sizes;
  std::size_t overflows = 0;
  {
    const Pmf offspring = geometric_pmf(0.5);
    RngStream gw_rng(opt.seed, 1);
    RngStream table_rng(opt.seed, 2);
    for (std::size_t i = 0; i < kSamples; ++i) {
      const auto size = gw_total_progeny(offspring, gw_rng);
      if (size) {
        gw_sizes.add(*size);
      } else {
        ++overflows;
        gw_sizes.add(static_cast<std::int64_t>(kDefaultNodeCap) + 1);
      }
      table_sizes.add(sample_progeny(table_rng));
    }
  }
  const double tv_two = tv_distance_window(gw_sizes, table_sizes, 1, 50);
  const bool ok = tv <= 0.01 && tv_two <= 0.01;
  return {ok, "sampler vs pmf tv[1,50]=" + fmt(tv) + " (<= 0.01), GW sizes vs sampler tv[1,50]=" + fmt(tv_two) +
                  " (<= 0.01), GW overflows=" + std::to_string(overflows)};
}

Outcome pattern_equidistribution() {
  bool ok = true;
  for (int n = 1; n <= 9; ++n) {
    const auto d321 = exact_fp_distribution(n, Permutation({3, 2, 1}));
    const auto d132 = exact_fp_distribution(n, Permutation({1, 3, 2}));
    const auto d213 = exact_fp_distribution(n, Permutation({2, 1, 3}));
    ok = ok && d321.counts == d132.counts && d321.counts == d213.counts && d321.total == catalan(n);
  }
  return {ok, ok ? "identical for n=1..9" : "distributions differ"};
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options) {
  SampleCache cache(options);
  struct Entry {
    int id;
    const char *name;
    double max_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria = {
      {1, "bijection exactness", 10.0, [] { return bijection_exactness(); }},
      {2, "fixed-point correspondence", 30.0, [] { return fixed_point_correspondence(); }},
      {3, "exact oracle vs sampler", 60.0, [&] { return exact_vs_sampler(options); }},
      {4, "front/back counts Geometric(2/3), independent", 300.0, [&] { return geometric_counts(cache); }},
      {5, "total count NegBin(2,1/3)", 0.0, [&] { return negbin_total(cache); }},
      {6, "fixed-point locations", 0.0, [&] { return fixed_point_locations(cache); }},
      {7, "mid-range vanishing", 0.0, [&] { return midrange_vanishing(cache); }},
      {8, "local limit", 0.0, [&] { return local_limit(options); }},
      {9, "progeny law", 0.0, [&] { return progeny_law(options); }},
      {10, "Av(321)/Av(132)/Av(213) equidistribution", 120.0, [] { return pattern_equidistribution(); }},
  };

  std::vector<CriterionResult> results;
  for (const auto &c : criteria) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = c.run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CriterionResult r{c.id, c.name, outcome.passed, std::move(outcome.detail), seconds};
    if (c.max_seconds > 0.0 && seconds > c.max_seconds) {
      r.passed = false;
      r.detail += " [runtime " + fmt(seconds) + " s exceeds " + fmt(c.max_seconds) + " s]";
    }
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result_line(const CriterionResult &r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << " (" << r.name << "): " << r.detail << " ["
     << fmt(r.seconds) << " s]";
  return os.str();
}

} // namespace av321
