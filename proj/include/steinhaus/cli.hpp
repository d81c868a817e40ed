#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace steinhaus {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kStoreDirEnv = "STEINHAUS_STORE_DIR";

/// Runs one CLI invocation. args excludes the program name.
/// Exit status: 0 success (a failing verdict included), 1 verification
/// failure, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace steinhaus
