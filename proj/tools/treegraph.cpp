#include <iostream>
#include <string>
#include <vector>

#include "treegraph/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return treegraph::run_cli(args, std::cout, std::cerr);
}
