#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace taeg {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitData = 3,
};

// Runs the command line (args excludes the program name). Data goes to out,
// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace taeg
