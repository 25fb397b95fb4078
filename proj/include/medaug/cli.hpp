#pragma once

#include <iosfwd>

namespace medaug::cli {

enum ExitStatus : int { kSuccess = 0, kPartialFailure = 1, kUsageError = 2 };

/// Entry point behind the `medaug` executable. Subcommands: apply, balance,
/// expand-seg, mixup, dice, stats. Results go to `out`, logs and usage
/// errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace medaug::cli
