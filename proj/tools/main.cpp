#include <iostream>

#include "tlsteiner/cli.hpp"

int main(int argc, char** argv) { return tlsteiner::run_cli(argc, argv, std::cout, std::cerr); }
