#include <iostream>

#include "akgeo/cli.hpp"

int main(int argc, char** argv) {
  return akgeo::run_cli(argc, argv, std::cout, std::cerr);
}
