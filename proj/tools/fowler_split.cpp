#include <iostream>
#include <string>
#include <vector>

#include "fowler/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fowler::cli::run(args, std::cout, std::cerr);
}
