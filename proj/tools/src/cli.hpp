#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kgz::cli {

/// Exit codes of the kgz tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one `kgz` invocation; `args` excludes the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Turns a JSON object into command line tokens: {"eps": 0.5} -> --eps 0.5,
/// arrays are comma-joined, true booleans become bare flags and false ones
/// are dropped. Keys may use '_' or '-'.
std::vector<std::string> json_to_args(const std::string& json_text);

/// Snapshot file name `<out>_t<value>.csv` with the shortest round-trip
/// spelling of t.
std::string snapshot_path(const std::string& out, double t);

}  // namespace kgz::cli
