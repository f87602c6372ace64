#include <iostream>

#include "taeg/cli.hpp"

int main(int argc, char** argv) {
  return taeg::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
