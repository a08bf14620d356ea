#include <iostream>

#include "amir/cli/app.hpp"

int main(int argc, char** argv) { return amir::cli::run_cli(argc, argv, std::cout, std::cerr); }
