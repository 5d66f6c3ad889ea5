#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace greenmeta {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNonConvergence = 2,
  kExitUsage = 64,
};

// Data goes to `out` (or files), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Convenience for tests: args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace greenmeta
