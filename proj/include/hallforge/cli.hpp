/// \file
/// Batch front end: loads a quiver, runs one subcommand and prints a JSON
/// report.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hallforge::cli {

enum ExitCode : int { pass = 0, mismatch = 1, usage = 2, resource_bound = 3 };

/// `args` excludes the program name. The report goes to `out`, warnings and
/// usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hallforge::cli
