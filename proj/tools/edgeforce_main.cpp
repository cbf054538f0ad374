#include <iostream>

#include "edgeforce/cli.hpp"

int main(int argc, char** argv) {
  return edgeforce::cli::run_cli(argc, argv, std::cout, std::cerr);
}
