#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperclust {

inline constexpr const char* kVersion = "hyperclust 1.0.0";

/// Entry point of the command-line tool. args[0] is the program name.
/// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperclust
