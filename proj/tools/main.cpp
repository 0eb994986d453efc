#include <iostream>
#include <string>
#include <vector>

#include "kgspec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kgspec::cli::run_cli(args, std::cout, std::cerr);
}
