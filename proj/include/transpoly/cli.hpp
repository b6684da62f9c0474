#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace transpoly {

enum ExitCode : int {
  kOk = 0,
  kBadInput = 1,
  kVerifyFailed = 2,
  kInternal = 3,
};

/// Entry point of the `tpoly` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace transpoly
