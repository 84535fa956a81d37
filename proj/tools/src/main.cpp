#include <iostream>
#include <string>
#include <vector>

#include "regtsp/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return regtsp::cli::run(args, std::cout, std::cerr);
}
