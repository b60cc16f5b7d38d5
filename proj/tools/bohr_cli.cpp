#include <iostream>

#include "bohr/cli.hpp"

int main(int argc, char** argv) {
  return bohr::run_cli(argc, argv, std::cout, std::cerr);
}
