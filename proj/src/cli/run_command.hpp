#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tentlab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_usage = 2;

/// Runs one tentlab subcommand. `args` excludes the program name. Artifacts
/// go to --out (default "."), together with manifest.json; diagnostics and
/// usage text go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tentlab::cli
