#include <iostream>
#include <string>
#include <vector>

#include "rocaudit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rocaudit::cli::run(args, std::cout, std::cerr);
}
