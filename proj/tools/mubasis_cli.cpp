#include <iostream>

#include "mubasis/cli.hpp"

int main(int argc, char** argv) { return mubasis::cli::main(argc, argv, std::cout, std::cerr); }
