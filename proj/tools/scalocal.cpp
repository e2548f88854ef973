#include <iostream>

#include "scalocal/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return scalocal::cli::run(argc, argv, std::cout, std::cerr);
}
