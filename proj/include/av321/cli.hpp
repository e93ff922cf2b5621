#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace av321 {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2 };

/// Runs one CLI invocation. `args` excludes the program name. Output that is
/// not redirected with --out goes to `out`; diagnostics go to `err`;
/// `in` feeds `biject` when --in is absent.
int run_command(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
                std::ostream &err);

} // namespace av321
