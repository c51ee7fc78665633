#include <iostream>
#include <string>
#include <vector>

#include "susmat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return susmat::run_cli(args, std::cout, std::cerr);
}
