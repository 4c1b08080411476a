#include <iostream>
#include <string>
#include <vector>

#include "gramian/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return gkit::cli::run(args, std::cout, std::cerr);
}
