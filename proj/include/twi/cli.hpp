#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twi {

enum ExitCode { kExitOk = 0, kExitSolverFailure = 1, kExitBadInput = 2 };

// Runs one command line (args[0] is the program name).  Reports go to
// `out` unless --out is given; diagnostics go to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace twi
