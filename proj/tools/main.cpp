#include <iostream>

#include "gompgof/cli.hpp"

int main(int argc, char** argv) {
  return gompgof::cli::run(argc, argv, std::cout, std::cerr);
}
