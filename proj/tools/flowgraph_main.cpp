#include <iostream>

#include "flowgraph/cli.hpp"

int main(int argc, char** argv) {
  return flowgraph::run_cli(argc, argv, std::cout, std::cerr);
}
