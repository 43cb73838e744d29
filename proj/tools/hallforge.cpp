#include <iostream>

#include "hallforge/cli.hpp"

int main(int argc, char** argv) {
  return hallforge::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
