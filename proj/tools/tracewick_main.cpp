#include <iostream>

#include "tracewick/cli.hpp"

int main(int argc, char** argv) {
  return tracewick::run_cli(argc, argv, std::cout, std::cerr);
}
