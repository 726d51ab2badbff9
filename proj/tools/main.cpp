#include <iostream>
#include <string>
#include <vector>

#include "hyperclust/cli.hpp"

int main(int argc, char** argv) {
  return hyperclust::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
