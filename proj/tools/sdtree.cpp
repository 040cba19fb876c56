#include <iostream>

#include "sdtree/cli.hpp"

int main(int argc, char** argv) { return sdtree::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
