#include <iostream>

#include "fuzzsuper/commands.hpp"

int main(int argc, char** argv) { return fuzzsuper::run_cli(argc, argv, std::cout, std::cerr); }
