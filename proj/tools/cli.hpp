#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vspart::cli {

/// Exit statuses shared by every subcommand.
enum Exit : int {
  kOk = 0,        // success, Found, valid
  kNegative = 1,  // invalid, Exhausted, no construction for these parameters
  kUsage = 2,     // bad arguments, unreadable input, budget or size limits
};

/// Run the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vspart::cli
