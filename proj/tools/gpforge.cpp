#include <iostream>

#include "gpforge/cli.hpp"

int main(int argc, char** argv) { return gpforge::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
