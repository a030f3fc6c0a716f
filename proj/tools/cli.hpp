#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace binwise::cli {

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
/// Exit codes: 0 success, 1 runtime failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace binwise::cli
