#include <iostream>
#include <string>
#include <vector>

#include "dauction/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dauction::cli_main(args, std::cout, std::cerr);
}
