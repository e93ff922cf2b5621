// Runs the acceptance criteria and prints one pass/fail line per criterion.
// Usage: av321_acceptance [criterion ids...] [--seed S] [--streams K]

#include <cstdlib>
#include <iostream>
#include <string>

#include "av321/acceptance.hpp"

int main(int argc, char **argv) {
  av321::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      options.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--streams" && i + 1 < argc) {
      options.streams = static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10));
    } else {
      options.only.push_back(std::stoi(arg));
    }
  }
  options.on_result = [](const av321::CriterionResult &r) {
    std::cout << av321::format_result_line(r) << std::endl;
  };
  bool all = true;
  for (const auto &r : av321::run_acceptance(options)) all = all && r.passed;
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
