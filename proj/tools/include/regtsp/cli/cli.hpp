#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace regtsp::cli {

/// Exit codes of the regtsp tool.
enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInputError = 2,
  kPreconditionFailed = 3,
  kInternalError = 4,
};

/// Runs the regtsp command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regtsp::cli
