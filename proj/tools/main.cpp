#include <iostream>

#include "specialsys/cli.hpp"

int main(int argc, char** argv) { return specialsys::cli::run(argc, argv, std::cout, std::cerr); }
