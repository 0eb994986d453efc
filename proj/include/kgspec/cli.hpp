#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgspec::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 1,
  kNoBoundState = 2,
  kInvariantViolation = 3,
};

/// Runs the command line `args` (without the program name) and returns the
/// process exit status. Subcommands: solve, curve, bounds, verify.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker threads from KGSPEC_THREADS, defaulting to 1.
int threads_from_env();

}  // namespace kgspec::cli
