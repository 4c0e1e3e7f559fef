#include <iostream>
#include <string>
#include <vector>

#include "rydgate/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rydgate::run_cli(args, std::cout, std::cerr);
}
