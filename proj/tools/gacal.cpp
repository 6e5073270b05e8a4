#include <iostream>

#include "gacal/cli.hpp"

int main(int argc, char** argv) { return gacal::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
