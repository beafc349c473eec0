#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padicl::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kCompareFailed = 1,
  kConfigError = 2,
  kDomainError = 3,
};

/// A rectangular table of strings with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style: fields containing a comma, quote or line break are
/// quoted, quotes doubled; every record ends in "\n".
std::string render_csv(const Table& table);

/// Inverse of render_csv. Throws ConfigError with a line/column position on
/// malformed input.
Table parse_csv(const std::string& text);

/// Runs the tool on argv-style arguments (args[0] is the program name),
/// writing results to out and diagnostics to err. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padicl::cli
