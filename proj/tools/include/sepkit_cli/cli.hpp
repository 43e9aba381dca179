#pragma once

#include <iosfwd>

namespace sepkit::cli {

// Exit codes of the command line tool.
enum Exit : int {
  kOk = 0,
  kUsage = 2,  // bad flags, unreadable or malformed input
  kInfeasible = 3,
  kSchedule = 4,
  kInvariant = 5,
};

// Runs `sepkit <mode> ...` with the given streams standing in for stdout and
// stderr.  Reports go to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sepkit::cli
