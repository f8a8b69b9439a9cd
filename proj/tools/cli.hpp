#pragma once

#include <ostream>

namespace cinf::cli {

/// Exit codes of run().
enum ExitCode : int {
  kOk = 0,
  kLawFailure = 1,  ///< a law failed or a 1-form is not closed
  kUsage = 2,       ///< bad flags or unparseable input
  kNonConvergence = 3,
};

/// Runs the command line `argv` (argv[0] is the program name), writing
/// results to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cinf::cli
