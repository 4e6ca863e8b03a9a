#include <iostream>

#include "sunits_cli.hpp"

int main(int argc, char** argv) { return sunits::cli::run(argc, argv, std::cout, std::cerr); }
