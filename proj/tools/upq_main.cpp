#include <iostream>
#include <string>
#include <vector>

#include "upq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return upq::cli::run(args, std::cin, std::cout, std::cerr);
}
