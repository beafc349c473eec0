#include <iostream>
#include <string>
#include <vector>

#include "padicl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return padicl::cli::run(args, std::cout, std::cerr);
}
