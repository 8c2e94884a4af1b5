// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "bgaug/cli.hpp"

int main(int argc, char** argv) {
  return bgaug::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
