#include <iostream>

#include "bgls/cli.hpp"

int main(int argc, char** argv) { return bgls::cli::main(argc, argv, std::cout, std::cerr); }
