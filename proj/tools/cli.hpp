#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chebquad::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNumerical = 2,
  kConvergenceFailed = 3,
};

/// Runs one `quad` invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chebquad::cli
