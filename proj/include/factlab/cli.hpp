#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace factlab {

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or the --output file), diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace factlab
