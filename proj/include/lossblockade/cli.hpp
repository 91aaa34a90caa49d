#pragma once

#include <iosfwd>

namespace lossblockade::cli {

/// Environment variable that overrides the default output directory; --out wins over it.
inline constexpr const char* kOutputDirEnv = "LOSSBLOCKADE_OUT";

/// Entry point of the command-line tool. Exit codes: 0 success, 1 numerical
/// failure, 2 usage or configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace lossblockade::cli
