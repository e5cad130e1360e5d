#include <iostream>
#include <string>
#include <vector>

#include "hclab/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return hclab::run_cli(args, std::cout, std::cerr);
}
