#include <iostream>

#include "rlws/cli.hpp"

int main(int argc, char** argv) { return rlws::cli::run_cli(argc, argv, std::cout, std::cerr); }
