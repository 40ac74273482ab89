#include <iostream>

#include "ghz/cli.hpp"

int main(int argc, char** argv) {
  return ghz::cli::cli_dispatch(argc, argv, std::cout, std::cerr);
}
