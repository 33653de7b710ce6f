#include <iostream>
#include <string>
#include <vector>

#include "robinlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return robinlab::run_cli(args, std::cout, std::cerr);
}
