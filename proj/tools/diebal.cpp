#include <iostream>

#include "diebal/cli.hpp"

int main(int argc, char** argv) { return diebal::cli::run(argc, argv, std::cout, std::cerr); }
