#include "av321/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace av321 {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_csv(std::ostream &os, const CsvTable &table) {
  auto line = [&os](const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(table.header);
  for (const auto &row : table.rows) line(row);
}

std::string metadata_json(const RunMetadata &meta) {
  nlohmann::json j;
  j["command"] = meta.command;
  j["version"] = meta.version;
  if (meta.seed) j["seed"] = *meta.seed;
  if (meta.streams) j["streams"] = *meta.streams;
  if (meta.n) j["n"] = *meta.n;
  if (meta.count) j["count"] = *meta.count;
  return j.dump();
}

void write_report_file(const std::string &path, const RunMetadata &meta, const std::string &body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << "# " << metadata_json(meta) << '\n' << body;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

CsvTable distribution_table(const Pmf &pmf, std::int64_t max_outcome) {
  CsvTable t{{"outcome", "probability"}, {}};
  for (std::int64_t k = 0; k <= max_outcome; ++k) {
    t.rows.push_back({std::to_string(k), format_double(pmf.at(k))});
  }
  return t;
}

CsvTable distribution_table(const ExactDist<int> &dist) {
  CsvTable t{{"outcome", "probability"}, {}};
  for (const auto &[k, count] : dist.counts) {
    const Rational p = dist.probability(k);
    t.rows.push_back({std::to_string(k),
                      format_double(static_cast<double>(p.numerator()) / static_cast<double>(p.denominator()))});
  }
  return t;
}

CsvTable joint_table(const ExactDist<std::pair<int, int>> &dist) {
  CsvTable t{{"front", "back", "probability"}, {}};
  for (const auto &[key, count] : dist.counts) {
    const Rational p = dist.probability(key);
    t.rows.push_back({std::to_string(key.first), std::to_string(key.second),
                      format_double(static_cast<double>(p.numerator()) / static_cast<double>(p.denominator()))});
  }
  return t;
}

CsvTable convergence_table(const std::vector<ConvergencePoint> &points) {
  CsvTable t{{"n", "tv", "ci"}, {}};
  for (const auto &p : points) {
    t.rows.push_back({std::to_string(p.n), format_double(p.tv), format_double(p.ci)});
  }
  return t;
}

CsvTable pmf_overlay(const Pmf &theory, const EmpiricalDist &empirical, double theory_floor) {
  std::set<std::int64_t> support;
  for (const auto &kv : empirical.counts()) support.insert(kv.first);
  for (std::size_t k = 0; k < theory.table_size(); ++k) {
    if (theory.at(static_cast<std::int64_t>(k)) >= theory_floor) support.insert(static_cast<std::int64_t>(k));
  }
  CsvTable t{{"outcome", "theoretical", "empirical"}, {}};
  for (std::int64_t k : support) {
    t.rows.push_back({std::to_string(k), format_double(theory.at(k)), format_double(empirical.frequency(k))});
  }
  return t;
}

double tv_noise_floor(const Pmf &theory, std::uint64_t samples) {
  if (samples == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < theory.table_size(); ++k) {
    const double p = theory.at(static_cast<std::int64_t>(k));
    acc += std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  }
  return acc / 2.0;
}

} // namespace av321
