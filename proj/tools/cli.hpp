#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hahnkit::cli {

/// Exit codes: 0 Holds/pass, 1 Fails/fail, 2 Inconclusive, 3 input or parse error.
enum ExitCode : int { kHolds = 0, kFails = 1, kInconclusive = 2, kInputError = 3 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hahnkit::cli
