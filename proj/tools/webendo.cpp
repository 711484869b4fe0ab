#include <iostream>

#include "webendo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return webendo::run_cli(args, std::cout, std::cerr);
}
