#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace foldlang::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). Results go to out,
// diagnostics and refuter progress to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foldlang::cli
