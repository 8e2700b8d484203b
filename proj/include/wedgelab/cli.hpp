#pragma once

#include <ostream>

namespace wedgelab {

/// Exit codes of the runner.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitNumerical = 3 };

/// Environment variable naming the default report directory.
inline constexpr const char* kOutDirEnv = "WEDGELAB_OUT_DIR";

/// Parses argv, runs one subcommand and writes its report.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wedgelab
