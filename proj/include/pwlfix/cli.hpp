#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pwlfix {

/// Full command-line driver; args excludes the program name. Returns the
/// process exit code: 0 success, 1 internal/analysis error (including verify
/// FAIL), 2 invalid input or flags.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pwlfix
