#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bmod::cli
{

/// Stable process exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_semantic = 1,  ///< validation or simulation-input errors
  exit_usage = 2,     ///< bad flags, unknown names, parse errors
  exit_io = 3,        ///< unreadable input, unwritable output
};

/// Runs the `bmod` command line. `args` excludes the program name. Normal
/// output goes to `out`, diagnostics and errors to `err`.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

/// Writes `content` to `path` through a sibling temporary file and a rename,
/// creating parent directories. Throws std::filesystem::filesystem_error or
/// std::ios_base::failure on IO failure.
void write_atomically(const std::string & path, const std::string & content);

}  // namespace bmod::cli
