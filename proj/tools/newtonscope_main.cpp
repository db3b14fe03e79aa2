#include <iostream>
#include <vector>

#include "newtonscope/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return newtonscope::runCli(std::move(args), std::cout, std::cerr);
}
