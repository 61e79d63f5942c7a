#include <iostream>

#include "ppr/cli.hpp"

int main(int argc, char** argv) { return ppr::cli::run(argc, argv, std::cout, std::cerr); }
