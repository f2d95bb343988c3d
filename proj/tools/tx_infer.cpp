#include <iostream>

#include "txinfer/cli.hpp"

int main(int argc, char** argv) { return txinfer::run_cli(argc, argv, std::cout, std::cerr); }
