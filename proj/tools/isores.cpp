#include <iostream>
#include <string>
#include <vector>

#include "isores/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return isores::cli::run(args, std::cout, std::cerr);
}
