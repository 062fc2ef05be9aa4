#include <iostream>

#include "hyperlm/cli.hpp"

int main(int argc, char** argv) { return hyperlm::run_cli(argc, argv, std::cout, std::cerr); }
