// Command-line entry point; all logic lives in the library so tests can
// drive the same code paths in-process.

#include <iostream>
#include <string>
#include <vector>

#include "orthotau/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return orthotau::run_cli(args, std::cout, std::cerr);
}
