#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circuit_atlas {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitInputError = 2, kExitCapExceeded = 3 };

/// Runs the command line tool. `args` excludes the program name. Polyhedron
/// files named "-" (the default) are read from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace circuit_atlas
