#include <iostream>

#include "zernike/cli.hpp"

int main(int argc, char** argv) {
  return zernike::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
