#include <iostream>

#include "periodscape/cli.hpp"

int main(int argc, char** argv) { return periodscape::cli::run(argc, argv, std::cout, std::cerr); }
