#include "hyperpolygon/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hyperpolygon::cli::run(argc, argv, std::cout, std::cerr); }
