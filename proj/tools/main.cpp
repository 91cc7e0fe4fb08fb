#include <iostream>

#include "tipsy/cli.hpp"

int main(int argc, char** argv) {
  return tipsy::run_cli(argc, argv, std::cout, std::cerr);
}
