#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hybrid {

/// Entry point of the command-line tool, exposed for testing.
///
/// args excludes the program name, e.g. {"expand", "cfg.json", "--order", "8"}.
/// Results go to `out`; all logging and error messages go to `err` only.
/// Returns the process exit code: 0 success, 1 domain validation failure,
/// 2 I/O or parse failure, 3 numeric failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hybrid
