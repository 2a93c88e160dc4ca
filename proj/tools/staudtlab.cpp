#include <iostream>

#include "staudtlab/cli.hpp"

int main(int argc, char** argv) { return staudt::cli::main_entry(argc, argv, std::cout, std::cerr); }
