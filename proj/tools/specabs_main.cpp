#include <iostream>

#include "specabs/cli.hpp"

int main(int argc, char** argv) { return specabs::cli::main_entry(argc, argv, std::cout, std::cerr); }
