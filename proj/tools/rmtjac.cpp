#include <iostream>
#include <string>
#include <vector>

#include "rmtjac/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rmtjac::cli::run(args, std::cout, std::cerr);
}
