#include <iostream>

#include "slipt/cli.hpp"

int main(int argc, char** argv) { return slipt::cli::run(argc, argv, std::cout, std::cerr); }
