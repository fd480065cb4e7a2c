#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcsim {

/// Full command-line front end. Returns the process exit code:
/// 0 ok, 1 verification failed, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcsim
