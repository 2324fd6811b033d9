#include <iostream>
#include <string>
#include <vector>

#include "circuit_atlas/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return circuit_atlas::run_cli(args, std::cin, std::cout, std::cerr);
}
