#include <iostream>

#include "endline/cli.hpp"

int main(int argc, char** argv) {
  return endline::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
