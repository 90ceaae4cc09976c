#include <iostream>

#include "hp/cli.hpp"

int main(int argc, char** argv) { return hp::cli::run(argc, argv, std::cout, std::cerr); }
