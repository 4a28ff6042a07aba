#include "fppkit/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fppkit::cli::run_command_line(args, std::cout, std::cerr);
}
