#include <iostream>
#include <string>
#include <vector>

#include "varcore/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return varcore::cli::dispatch(args, std::cout, std::cerr);
}
