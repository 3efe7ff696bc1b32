#include <iostream>
#include <string>
#include <vector>

#include "qrc1/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qrc1::cli::run_cli(args, std::cout, std::cerr);
}
