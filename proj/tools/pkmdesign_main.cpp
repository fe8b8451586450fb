#include <iostream>
#include <string>
#include <vector>

#include "pkmdesign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pkm::cli::run(args, std::cout, std::cerr);
}
