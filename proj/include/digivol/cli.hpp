#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace digivol {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConsistency = 3;

/// Runs the command line tool. `args` excludes the program name. Data goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits, '.' as the decimal point regardless of locale.
std::string format_number(double x);

}  // namespace digivol
