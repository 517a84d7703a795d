#pragma once

#include <iosfwd>

namespace ginv::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kUsage = 2,  // bad flags, unreadable or malformed input
    kPrecondition = 3,
    kNumeric = 4,
};

/// Runs `ginv <compute|index|decompose|verify|random> [flags]`. Matrices
/// written to "-" and regular command output go to `out`; diagnostics go to
/// `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ginv::cli
