#include <iostream>

#include "twistroot/cli.hpp"

int main(int argc, char** argv) {
  return twistroot::cli::main(argc, argv, std::cout, std::cerr);
}
