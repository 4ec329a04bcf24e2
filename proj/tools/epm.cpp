#include <iostream>

#include "epm/cli.hpp"

int main(int argc, char **argv) { return epm::cli::run(argc, argv, std::cout, std::cerr); }
