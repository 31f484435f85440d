#pragma once

#include <iosfwd>

namespace hmp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidInput = 2,
  kRefused = 3,
};

/// Entry point of the `hmp` tool. Output goes to `out` unless --out is given;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hmp::cli
