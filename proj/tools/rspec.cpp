#include <iostream>

#include "rspec/cli.hpp"

int main(int argc, char** argv) {
  return rspec::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
