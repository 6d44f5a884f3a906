#include <iostream>

#include "yo_cli/cli.hpp"

int main(int argc, char** argv) { return yo::cli::main_entry(argc, argv, std::cout, std::cerr); }
