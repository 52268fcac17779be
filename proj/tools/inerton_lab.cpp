#include <iostream>

#include "inerton/cli.hpp"

int main(int argc, char** argv) { return inerton::cli::main(argc, argv, std::cout, std::cerr); }
