#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smc::cli {

/// Process exit codes. Each error class gets its own code so scripts can
/// tell a typo in a flag from a broken model.
enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,   // simulation, evaluation or batch failure
  kBadArguments = 2,   // unknown flag, missing required flag, bad value
  kIoError = 3,        // file could not be read or written
  kFormatError = 4,    // JSON syntax or model document layout
  kValidationError = 5,
  kFormulaError = 6,
};

/// Runs the tool on `args` (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smc::cli
