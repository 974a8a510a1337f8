#pragma once

#include <iosfwd>

namespace trapqm::cli {

/// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trapqm::cli
