#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace av321 {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured values next to their thresholds.
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  unsigned streams = 1;
  /// Criterion ids to run; empty runs all ten.
  std::vector<int> only;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult &)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options);

std::string format_result_line(const CriterionResult &r);

} // namespace av321
