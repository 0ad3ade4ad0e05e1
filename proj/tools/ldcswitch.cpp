#include <iostream>
#include <string>
#include <vector>

#include "ldcswitch/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return ldcswitch::run(args, std::cout, std::cerr);
}
