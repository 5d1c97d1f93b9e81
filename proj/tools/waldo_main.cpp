#include <iostream>

#include "waldo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return waldo::cli::run(args, std::cout, std::cerr);
}
