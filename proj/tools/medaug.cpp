#include <iostream>

#include "medaug/cli.hpp"

int main(int argc, char** argv) { return medaug::cli::run(argc, argv, std::cout, std::cerr); }
