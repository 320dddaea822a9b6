#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chipfire {

/// Runs the command-line toolkit on argv-style arguments (program name not
/// included). Returns the process exit code: 0 on success, 1 for usage and
/// domain errors, 2 for internal invariant violations.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace chipfire
