#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hjnet::cli {

/// Runs one `hjnet` invocation. `args` excludes the program name. Reports go
/// to `out`, diagnostics to `err`; the return value is the process exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hjnet::cli
