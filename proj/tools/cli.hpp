#pragma once

#include <ostream>

namespace danc::cli {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "DANC_OUT_DIR";

/// Parses argv and runs one subcommand. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace danc::cli
