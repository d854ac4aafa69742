#include "oqw/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return oqw::cli::main_entry(argc, argv, std::cout, std::cerr); }
