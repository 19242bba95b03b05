#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bracelet::cli {

/// Runs the command line `args` (without the program name) and returns the
/// process exit code: 0 on success, 1 when a verified claim fails or errors,
/// 2 for usage and input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bracelet::cli
