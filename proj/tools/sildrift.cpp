#include <iostream>

#include "sildrift_cli.hpp"

int main(int argc, char** argv) { return sildrift::cli::run(argc, argv, std::cout, std::cerr); }
