#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace varcore::cli {

enum ExitStatus : int {
  kClean = 0,
  kFindings = 1,  ///< error-severity findings, anomalies or failing variants
  kUsage = 2,     ///< bad arguments, unreadable or malformed input, I/O failure
};

/// Runs one command line. `args[0]` is the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace varcore::cli
