#include <iostream>

#include "chanmom/cli.hpp"

int main(int argc, char** argv) { return chanmom::cli::run(argc, argv, std::cout, std::cerr); }
