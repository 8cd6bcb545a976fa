#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tailassoc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_numerical_failure = 3;

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` when --out is "-", diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tailassoc::cli
