#pragma once

#include <ostream>

namespace qwspec {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerdictFailure = 1,
  kExitInputError = 2,
  kExitNumericalError = 3,
};

/// Entry point of the `qwspec` tool (build, spectrum, verify, eigvec).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwspec
