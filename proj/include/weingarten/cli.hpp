#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weingarten {

/// Runs one CLI invocation. Exit codes: 0 success, 1 domain or runtime error,
/// 2 usage error. Diagnostics go to `err` as a single line.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weingarten
