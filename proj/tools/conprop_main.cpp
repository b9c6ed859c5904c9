#include <iostream>

#include "conprop/cli.hpp"

int main(int argc, char** argv) { return conprop::cli::main(argc, argv, std::cin, std::cout, std::cerr); }
