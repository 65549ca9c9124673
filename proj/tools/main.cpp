#include <iostream>

#include "shelldecay/cli.hpp"

int main(int argc, char** argv) { return shelldecay::cli::run(argc, argv, std::cout, std::cerr); }
