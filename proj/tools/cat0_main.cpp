#include <iostream>
#include <string>
#include <vector>

#include "cat0/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cat0::run_cli(args, std::cout, std::cerr);
}
