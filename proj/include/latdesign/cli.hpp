#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latdesign {

// Exit codes of run_cli.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,       // invalid flags or values
  kExitInfeasible = 3,  // an exact-oracle or scan guard was exceeded
  kExitIo = 4,          // output could not be written / input could not be read
  kExitFailure = 5,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace latdesign
