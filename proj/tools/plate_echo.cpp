#include <iostream>
#include <string>
#include <vector>

#include "plate_echo/cli.hpp"

int main(int argc, char** argv) {
  return plate_echo::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
