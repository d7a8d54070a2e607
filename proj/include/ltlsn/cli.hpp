#pragma once

#include <string>
#include <vector>

namespace ltlsn::cli {

enum ExitCode : int {
  success = 0,
  does_not_hold = 1,
  usage_error = 2,
  invalid_model = 3,
  engine_disagreement = 4,
};

struct CommandResult {
  int exit_code = success;
  std::string stdout_text;
  std::string stderr_text;
};

/// Runs one subcommand. `args` excludes the program name:
///   validate <model>
///   trace <model>
///   check <model> <formula>
///   translate <model> <formula> [--expand-majority] [--majority-limit N]
///   xcheck <model> <formula>
CommandResult run(const std::vector<std::string>& args);

} // namespace ltlsn::cli
