#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pathcover::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kInvalid = 1;     // validate found a problem
constexpr int kInputError = 2;  // bad flags, unreadable or malformed input
constexpr int kInfeasible = 3;  // cover larger than kappa
constexpr int kInternal = 4;    // internal consistency check failed

/// Parses argv-style arguments (args[0] is the program name), runs the
/// subcommand, writes the report to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathcover::cli
