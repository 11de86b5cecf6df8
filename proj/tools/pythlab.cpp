#include <iostream>

#include "pythlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pythlab::run(args, std::cout, std::cerr);
}
