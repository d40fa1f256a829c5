#include <iostream>
#include <string>
#include <vector>

#include "modelmult/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return modelmult::cli::run(args, std::cout, std::cerr);
}
