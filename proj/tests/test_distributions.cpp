#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "av321/empirical.hpp"
#include "av321/exact.hpp"
#include "av321/montecarlo.hpp"
#include "av321/pmf.hpp"
#include "av321/rng.hpp"

using namespace av321;

namespace {

double catalan(int m) {
  double c = 1.0;
  for (int i = 0; i < m; ++i) c = c * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
  return c;
}

} // namespace

TEST_CASE("named laws match their formulas") {
  const Pmf g = geometric_pmf(2.0 / 3.0);
  const Pmf nb = negbin_2_one_third_pmf();
  const Pmf sb = size_biased_geom_half_pmf();
  const Pmf prog = progeny_pmf();
  for (int k = 0; k < 60; ++k) {
    REQUIRE(g.at(k) == doctest::Approx((2.0 / 3.0) * std::pow(1.0 / 3.0, k)).epsilon(1e-12));
    REQUIRE(nb.at(k) == doctest::Approx((4.0 / 9.0) * (k + 1) * std::pow(1.0 / 3.0, k)).epsilon(1e-12));
    REQUIRE(sb.at(k) == doctest::Approx(k * std::pow(0.5, k + 1)).epsilon(1e-12));
  }
  for (int k = 1; k < 200; ++k) {
    REQUIRE(prog.at(k) == doctest::Approx(catalan(k - 1) / std::pow(2.0, 2 * k - 1)).epsilon(1e-12));
  }
  CHECK(prog.at(0) == 0.0);
  CHECK(prog.at(4) == doctest::Approx(5.0 / 128));
  CHECK(nb.at(0) == doctest::Approx(4.0 / 9));
  CHECK(nb.at(1) == doctest::Approx(8.0 / 27));
  CHECK(std::abs(g.total() - 1.0) <= 1e-12);
  CHECK(std::abs(nb.total() - 1.0) <= 1e-12);
  CHECK(std::abs(sb.total() - 1.0) <= 1e-12);
  CHECK(g.at(-1) == 0.0);
  // Atoms beyond the table come from the analytic tail.
  CHECK(g.at(100) == doctest::Approx((2.0 / 3.0) * std::pow(1.0 / 3.0, 100)).epsilon(1e-12));
  CHECK_THROWS_AS(geometric_pmf(0.0), std::invalid_argument);
  CHECK_THROWS_AS(geometric_pmf(1.0), std::invalid_argument);
}

TEST_CASE("progeny survival") {
  CHECK(progeny_survival(1) == 1.0);
  CHECK(progeny_survival(2) == doctest::Approx(0.5));
  CHECK(progeny_survival(3) == doctest::Approx(0.375));
  const Pmf prog = progeny_pmf();
  for (int k : {10, 100, 4000}) {
    CHECK(progeny_survival(k) - progeny_survival(k + 1) == doctest::Approx(prog.at(k)).epsilon(1e-9));
  }
  // Tail ~ 1 / sqrt(pi k).
  const double big = 1e12;
  CHECK(progeny_survival(static_cast<std::int64_t>(big)) * std::sqrt(M_PI * big) ==
        doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("partial sums, quantiles and parsing") {
  const Pmf g = geometric_pmf(0.5);
  CHECK(g.partial_sum(1) == doctest::Approx(0.75));
  CHECK(g.survival(2) == doctest::Approx(0.25));
  CHECK(g.quantile(0.1) == 0);
  CHECK(g.quantile(0.6) == 1);
  CHECK(g.quantile(1.0 - 1e-30) >= 60);
  CHECK(theoretical_pmf("geometric(2/3)").at(1) == doctest::Approx(2.0 / 9));
  CHECK(theoretical_pmf("geometric(0.5)").at(0) == doctest::Approx(0.5));
  CHECK(theoretical_pmf("negbin_2_one_third").at(0) == doctest::Approx(4.0 / 9));
  CHECK_THROWS(theoretical_pmf("poisson(1)"));
  CHECK(delta_pmf(3).at(3) == 1.0);
  CHECK(geometric_mean_with_tail(2.0 / 3.0, 64) == doctest::Approx(0.5).epsilon(1e-12));
  // Criticality of the offspring law.
  CHECK(std::abs(geometric_mean_with_tail(0.5, 64) - 1.0) <= 1e-12);
}

TEST_CASE("convolution of two Geometric(2/3) is NegBin(2,1/3)") {
  const Pmf conv = convolve_pmf(geometric_pmf(2.0 / 3.0), geometric_pmf(2.0 / 3.0), 41);
  const Pmf nb = negbin_2_one_third_pmf();
  for (int k = 0; k <= 40; ++k) REQUIRE(std::abs(conv.at(k) - nb.at(k)) <= 1e-12);
}

TEST_CASE("total variation") {
  const Pmf g = geometric_pmf(2.0 / 3.0);
  CHECK(tv_distance(g, g) == 0.0);
  CHECK(tv_distance(g, negbin_2_one_third_pmf()) == doctest::Approx(2.0 / 9).epsilon(1e-9));
  CHECK(tv_distance(delta_pmf(0), delta_pmf(1)) == doctest::Approx(1.0));

  EmpiricalDist e;
  e.add(0, 2);
  e.add(1, 1);
  CHECK(tv_distance(e, g) == doctest::Approx(1.0 / 9).epsilon(1e-12));
  EmpiricalDist f;
  f.add(5);
  CHECK(tv_distance(e, f) == 1.0);
  // Everything outside [1, 2] folds into one bucket.
  EmpiricalDist w1, w2;
  w1.add(0);
  w2.add(7);
  CHECK(tv_distance_window(w1, w2, 1, 2) == 0.0);
  w2.add(1);
  CHECK(tv_distance_window(w1, w2, 1, 2) == doctest::Approx(0.5));
}

TEST_CASE("tallies merge associatively") {
  EmpiricalDist a, b, c;
  a.add(1);
  b.add(1);
  b.add(2);
  c.add(3, 4);
  EmpiricalDist left = a, right = b;
  left.merge(b);
  left.merge(c);
  right.merge(c);
  right.merge(a);
  CHECK(left == right);
  CHECK(left.total() == 7);
  CHECK(left.frequency(3) == doctest::Approx(4.0 / 7));
}

TEST_CASE("chi-square independence") {
  JointEmpirical product;
  const double row[] = {0.5, 0.3, 0.2};
  const double col[] = {0.6, 0.4};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 2; ++c) product.add({r, c}, static_cast<std::uint64_t>(10000 * row[r] * col[c]));
  }
  const ChiSquareResult ind = chi_square_independence(product);
  CHECK(ind.statistic == doctest::Approx(0.0).scale(1.0));
  CHECK(ind.degrees == 2);
  CHECK(ind.p_value > 0.99);

  JointEmpirical diagonal;
  for (int k = 0; k < 4; ++k) diagonal.add({k, k}, 500);
  const ChiSquareResult dep = chi_square_independence(diagonal);
  CHECK(dep.p_value < 1e-12);

  // Sparse tail cells merge until each expected count reaches the floor.
  JointEmpirical sparse = product;
  sparse.add({9, 0}, 1);
  const ChiSquareResult merged = chi_square_independence(sparse);
  CHECK(merged.row_edges.size() == 3);

  JointEmpirical one_row;
  one_row.add({0, 0}, 10);
  one_row.add({0, 1}, 10);
  CHECK_THROWS(chi_square_independence(one_row));
}

TEST_CASE("Wilson interval") {
  const ProportionEstimate p = proportion(50, 100);
  CHECK(p.estimate == 0.5);
  CHECK(p.half_width == doctest::Approx(0.0958).epsilon(0.01));
  CHECK(proportion(0, 100).half_width > 0.0);
}

TEST_CASE("exact fixed point laws") {
  const ExactDist<int> d3 = exact_fp_distribution(3, Permutation({3, 2, 1}));
  CHECK(d3.total == 5);
  CHECK(d3.probability(0) == Rational(2, 5));
  CHECK(d3.probability(1) == Rational(2, 5));
  CHECK(d3.probability(3) == Rational(1, 5));
  CHECK(d3.probability(2) == Rational(0));
  const ExactDist<int> d1 = exact_fp_distribution(1, Permutation({3, 2, 1}));
  CHECK(d1.probability(1) == Rational(1));
  CHECK_THROWS(exact_fp_distribution(11, Permutation({3, 2, 1})));

  const auto j2 = exact_front_back_joint(2);
  CHECK(j2.probability({1, 1}) == Rational(1, 2));
  CHECK(j2.probability({0, 0}) == Rational(1, 2));
  const auto j3 = exact_front_back_joint(3);
  CHECK(j3.probability({0, 0}) == Rational(2, 5));

  for (int n = 1; n <= 9; ++n) {
    const auto joint = exact_front_back_joint(n);
    const auto marginal = exact_fp_distribution(n, Permutation({3, 2, 1}));
    ExactDist<int> summed;
    for (const auto &[key, count] : joint.counts) {
      for (std::uint64_t i = 0; i < count; ++i) summed.add(key.first + key.second);
    }
    REQUIRE(summed.same_law(marginal));
  }
}

TEST_CASE("P(fixed point at 1) is C_{n-1}/C_n") {
  CHECK(exact_fixed_at_one(4) == Rational(5, 14));
  for (int n = 1; n <= 11; ++n) {
    REQUIRE(exact_fixed_at_one(n) ==
            Rational(static_cast<std::int64_t>(catalan(n - 1)), static_cast<std::int64_t>(catalan(n))));
  }
}

TEST_CASE("mid-range oracle agrees with enumeration") {
  const Permutation p321({3, 2, 1});
  for (int n = 1; n <= 9; ++n) {
    const auto avoiders = list_avoiders(n, p321);
    for (int a = 1; a <= n; ++a) {
      for (int b = a; b <= n; ++b) {
        long hits = 0;
        for (const auto &perm : avoiders) {
          for (int i = a; i <= b; ++i) {
            if (perm(i) == i) {
              ++hits;
              break;
            }
          }
        }
        REQUIRE(exact_midrange_probability(n, a, b) ==
                doctest::Approx(static_cast<double>(hits) / static_cast<double>(avoiders.size())).epsilon(1e-12));
      }
    }
  }
  CHECK(exact_midrange_probability(2, 1, 2) == doctest::Approx(0.5));
  CHECK_THROWS(exact_midrange_probability(5, 3, 2));
}

TEST_CASE("pattern equidistribution of fixed points") {
  for (int n = 1; n <= 8; ++n) {
    const auto base = exact_fp_distribution(n, Permutation({3, 2, 1}));
    REQUIRE(base.same_law(exact_fp_distribution(n, Permutation({1, 3, 2}))));
    REQUIRE(base.same_law(exact_fp_distribution(n, Permutation({2, 1, 3}))));
  }
  // Av(123) differs: at n = 3 the identity is excluded.
  CHECK_FALSE(exact_fp_distribution(3, Permutation({3, 2, 1}))
                  .same_law(exact_fp_distribution(3, Permutation({1, 2, 3}))));
}

TEST_CASE("to_pmf") {
  const Pmf p = to_pmf(exact_fp_distribution(3, Permutation({3, 2, 1})));
  CHECK(p.at(0) == doctest::Approx(0.4));
  CHECK(p.at(2) == 0.0);
  CHECK(p.at(3) == doctest::Approx(0.2));
}
