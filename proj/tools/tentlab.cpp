#include <iostream>
#include <string>
#include <vector>

#include "run_command.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tentlab::cli::run_command(args, std::cout, std::cerr);
}
