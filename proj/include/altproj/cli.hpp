#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace altproj::cli {

enum ExitCode : int { ok = 0, usage_error = 1, numerical_failure = 2 };

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace altproj::cli
