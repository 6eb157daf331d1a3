#include <iostream>

#include "whittaker/cli.hpp"

int main(int argc, char** argv) { return whittaker::run_cli(argc, argv, std::cout, std::cerr); }
