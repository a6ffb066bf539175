#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace demonwalk {

/// Parses argv (without the program name), runs the experiment, writes the
/// serialized report to `out` and diagnostics to `err`.
/// Exit codes: 0 success, 2 configuration/usage error, 1 runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace demonwalk
