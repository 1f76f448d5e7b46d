#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppfilter {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitBadConfig = 2,
  kExitDegenerate = 3,
  kExitNoBand = 4,
};

/// Entry point of the ppfilter command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppfilter
