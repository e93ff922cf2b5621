#include "av321/empirical.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace av321 {

double tv_distance(const Pmf &a, const Pmf &b) {
  const auto K = static_cast<std::int64_t>(std::max(a.table_size(), b.table_size()));
  double acc = 0.0;
  for (std::int64_t k = 0; k < K; ++k) acc += std::abs(a.at(k) - b.at(k));
  acc += std::abs(a.survival(K) - b.survival(K));
  return acc / 2.0;
}

double tv_distance(const EmpiricalDist &a, const Pmf &b) {
  std::int64_t K = static_cast<std::int64_t>(b.table_size());
  double acc = 0.0;
  for (const auto &[k, count] : a.counts()) {
    if (k < 0) acc += a.frequency(k);
    K = std::max(K, k + 1);
  }
  for (std::int64_t k = 0; k < K; ++k) acc += std::abs(a.frequency(k) - b.at(k));
  acc += b.survival(K);
  return acc / 2.0;
}

double tv_distance_window(const EmpiricalDist &a, const Pmf &b, std::int64_t lo, std::int64_t hi) {
  double acc = 0.0;
  double a_inside = 0.0;
  double b_inside = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double fa = a.frequency(k);
    const double fb = b.at(k);
    acc += std::abs(fa - fb);
    a_inside += fa;
    b_inside += fb;
  }
  acc += std::abs((1.0 - a_inside) - (1.0 - b_inside));
  return acc / 2.0;
}

double tv_distance_window(const EmpiricalDist &a, const EmpiricalDist &b, std::int64_t lo,
                          std::int64_t hi) {
  double acc = 0.0;
  double a_inside = 0.0;
  double b_inside = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double fa = a.frequency(k);
    const double fb = b.frequency(k);
    acc += std::abs(fa - fb);
    a_inside += fa;
    b_inside += fb;
  }
  acc += std::abs(a_inside - b_inside);
  return acc / 2.0;
}

namespace {

struct Axis {
  std::vector<std::int64_t> edges;
  std::vector<std::size_t> group; // distinct outcome index -> category
};

void merge_category(Axis &axis, std::size_t victim) {
  // Fold `victim` into its predecessor, or into the next category when it is first.
  const std::size_t into = victim == 0 ? 1 : victim - 1;
  const std::size_t lo = std::min(victim, into);
  for (auto &g : axis.group) {
    if (g == victim) g = into;
  }
  for (auto &g : axis.group) {
    if (g > lo) --g;
  }
  axis.edges.erase(axis.edges.begin() + static_cast<std::ptrdiff_t>(lo + 1));
}

} // namespace

ChiSquareResult chi_square_independence(const JointEmpirical &joint, double bin_floor) {
  std::vector<std::int64_t> row_values, col_values;
  for (const auto &[key, count] : joint.counts()) {
    row_values.push_back(key.first);
    col_values.push_back(key.second);
  }
  std::sort(row_values.begin(), row_values.end());
  row_values.erase(std::unique(row_values.begin(), row_values.end()), row_values.end());
  std::sort(col_values.begin(), col_values.end());
  col_values.erase(std::unique(col_values.begin(), col_values.end()), col_values.end());
  if (row_values.size() < 2 || col_values.size() < 2) {
    throw std::invalid_argument("chi_square_independence: table needs at least two rows and two columns");
  }

  auto index_of = [](const std::vector<std::int64_t> &v, std::int64_t x) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };

  Axis rows{row_values, {}}, cols{col_values, {}};
  for (std::size_t i = 0; i < row_values.size(); ++i) rows.group.push_back(i);
  for (std::size_t j = 0; j < col_values.size(); ++j) cols.group.push_back(j);

  const double total = static_cast<double>(joint.total());
  std::vector<double> row_sum, col_sum;
  std::vector<std::vector<double>> cell;
  auto rebuild = [&] {
    row_sum.assign(rows.edges.size(), 0.0);
    col_sum.assign(cols.edges.size(), 0.0);
    cell.assign(rows.edges.size(), std::vector<double>(cols.edges.size(), 0.0));
    for (const auto &[key, count] : joint.counts()) {
      const std::size_t r = rows.group[index_of(row_values, key.first)];
      const std::size_t c = cols.group[index_of(col_values, key.second)];
      cell[r][c] += static_cast<double>(count);
      row_sum[r] += static_cast<double>(count);
      col_sum[c] += static_cast<double>(count);
    }
  };

  rebuild();
  for (;;) {
    if (rows.edges.size() < 2 || cols.edges.size() < 2) {
      throw std::invalid_argument("chi_square_independence: table degenerates after merging sparse cells");
    }
    const auto rmin = std::min_element(row_sum.begin(), row_sum.end());
    const auto cmin = std::min_element(col_sum.begin(), col_sum.end());
    if (*rmin * *cmin / total >= bin_floor) break;
    // Merge whichever axis holds the sparser category; prefer the tail.
    const bool merge_row = *rmin <= *cmin;
    if (merge_row) {
      std::size_t victim = static_cast<std::size_t>(rmin - row_sum.begin());
      if (row_sum.back() * *cmin / total < bin_floor) victim = row_sum.size() - 1;
      merge_category(rows, victim);
    } else {
      std::size_t victim = static_cast<std::size_t>(cmin - col_sum.begin());
      if (*rmin * col_sum.back() / total < bin_floor) victim = col_sum.size() - 1;
      merge_category(cols, victim);
    }
    rebuild();
  }

  ChiSquareResult out;
  for (std::size_t r = 0; r < row_sum.size(); ++r) {
    for (std::size_t c = 0; c < col_sum.size(); ++c) {
      const double expected = row_sum[r] * col_sum[c] / total;
      const double diff = cell[r][c] - expected;
      out.statistic += diff * diff / expected;
    }
  }
  out.degrees = static_cast<int>((row_sum.size() - 1) * (col_sum.size() - 1));
  out.p_value = boost::math::gamma_q(out.degrees / 2.0, out.statistic / 2.0);
  out.row_edges = rows.edges;
  out.col_edges = cols.edges;
  return out;
}

} // namespace av321
