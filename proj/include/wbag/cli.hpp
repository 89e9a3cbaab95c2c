#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wbag::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCapReached = 2;

/// Runs one command line (`args` excludes the program name). Returns 0 on
/// success or exact/converged results, 2 when a solver cap was reached, and
/// 1 on any input, flag or I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wbag::cli
