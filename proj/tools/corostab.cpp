#include <iostream>

#include "corostab/cli.hpp"

int main(int argc, char** argv) { return corostab::run_cli(argc, argv, std::cout, std::cerr); }
