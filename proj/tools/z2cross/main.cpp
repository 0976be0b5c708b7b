#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return z2cross::cli::run(argc, argv, std::cout, std::cerr);
}
