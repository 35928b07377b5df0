#include <iostream>
#include <string>
#include <vector>

#include "batchcot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return batchcot::cli::run(args, std::cout, std::cerr);
}
