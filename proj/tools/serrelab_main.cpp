#include <iostream>
#include <string>
#include <vector>

#include "serrelab/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return serrelab::run_cli(args, std::cout, std::cerr);
}
