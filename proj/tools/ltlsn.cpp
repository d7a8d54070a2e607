#include <iostream>
#include <string>
#include <vector>

#include "ltlsn/cli.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  auto result = ltlsn::cli::run(args);
  std::cout << result.stdout_text;
  std::cerr << result.stderr_text;
  return result.exit_code;
}
