#pragma once

#include <iosfwd>

namespace xmasjump::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kDataError = 3,   // unreadable/malformed input, calendar or window problems
  kModelError = 4,  // degenerate or rank-deficient fits, window too short
  kOutputError = 5, // cannot write the requested output
};

inline constexpr const char* kDataEnvVar = "XMASJUMP_DATA";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xmasjump::cli
