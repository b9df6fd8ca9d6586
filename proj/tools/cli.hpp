#pragma once

#include <iosfwd>

namespace xplain::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalid = 2,
  kBudget = 3,
  kParse = 4,
  kOracleMismatch = 5,
};

/// Runs one command line. Reports go to `out`; in human mode errors go to `err`,
/// in json mode they are written to `out` as {"error": {...}}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xplain::cli
