#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collatznet {

/// Exit codes shared by every verb.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitUsage = 3;

/// Dispatches one command line (without the program name). All output goes
/// to the supplied streams, so tests can drive the CLI in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collatznet
