#pragma once

#include <string>
#include <vector>

namespace wlpa::cli {

/// Exit codes: 0 ok, 1 negative verdict, 2 input error, 3 internal failure.
struct CommandResult {
  int exit_code = 0;
  std::string out;  // JSON or graph text
  std::string err;  // diagnostics
};

/// Runs one command line (without the program name).
CommandResult run(const std::vector<std::string>& args);

}  // namespace wlpa::cli
