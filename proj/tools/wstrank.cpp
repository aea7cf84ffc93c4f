#include "wstrank/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return wstrank::cli::run(argc, argv, std::cout, std::cerr);
}
