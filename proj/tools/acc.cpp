#include <iostream>

#include "accwb/cli.hpp"

int main(int argc, char** argv) {
  return accwb::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
