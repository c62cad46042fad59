#include <iostream>

#include "bakerlab_cli.hpp"

int main(int argc, char** argv) { return bakerlab::cli::run_cli(argc, argv, std::cout, std::cerr); }
