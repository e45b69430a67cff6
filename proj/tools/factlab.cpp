#include <iostream>

#include "factlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return factlab::run(args, std::cout, std::cerr);
}
