#include <iostream>

#include "poolhire/cli.hpp"

int main(int argc, char** argv) {
  return poolhire::cli_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
