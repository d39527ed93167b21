#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kolmo::cli {

enum ExitCode : int { kPass = 0, kVerifyFailed = 1, kUsage = 2, kBuilderError = 3 };

/// Runs the kolmo command line (build, verify, export, decompose, counterexample).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kolmo::cli
