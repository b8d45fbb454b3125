#include <iostream>

#include "zipfcomp/cli.hpp"

int main(int argc, char** argv) { return zipfcomp::run_cli(argc, argv, std::cout, std::cerr); }
