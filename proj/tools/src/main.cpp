#include <iostream>
#include <string>
#include <vector>

#include "lfapprox_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lfapprox::cli::run(args, std::cout, std::cerr);
}
