#include <iostream>
#include <string>
#include <vector>

#include "transpoly/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return transpoly::run_cli(args, std::cout, std::cerr);
}
