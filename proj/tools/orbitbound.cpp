#include <iostream>

#include "orbitbound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return orbitbound::run_cli(args, std::cout, std::cerr);
}
