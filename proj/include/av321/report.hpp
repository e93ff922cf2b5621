#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "av321/empirical.hpp"
#include "av321/exact.hpp"
#include "av321/pmf.hpp"

namespace av321 {

/// Shortest round-trip decimal form; stable across runs.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream &os, const CsvTable &table);

/// Provenance written ahead of every experiment file.
struct RunMetadata {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> streams;
  std::optional<std::int64_t> n;
  std::optional<std::uint64_t> count;
  std::string version = AV321_VERSION;
};

/// Compact JSON object, keys sorted.
std::string metadata_json(const RunMetadata &meta);

/// Writes "# <metadata json>\n" followed by `body` to `path`. Throws
/// std::runtime_error naming the path on I/O failure.
void write_report_file(const std::string &path, const RunMetadata &meta, const std::string &body);

CsvTable distribution_table(const Pmf &pmf, std::int64_t max_outcome);
CsvTable distribution_table(const ExactDist<int> &dist);
CsvTable joint_table(const ExactDist<std::pair<int, int>> &dist);

struct ConvergencePoint {
  std::int64_t n;
  double tv;
  double ci;
};

CsvTable convergence_table(const std::vector<ConvergencePoint> &points);

/// Aligned (outcome, theoretical, empirical) columns over the union of the
/// empirical outcomes and the tabulated atoms with mass >= theory_floor.
CsvTable pmf_overlay(const Pmf &theory, const EmpiricalDist &empirical, double theory_floor = 1e-9);

/// Expected TV noise floor 0.5 * sum_k sqrt(p_k (1 - p_k) / samples) over the
/// tabulated atoms of `theory`.
double tv_noise_floor(const Pmf &theory, std::uint64_t samples);

} // namespace av321
