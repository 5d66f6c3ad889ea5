#include "greenmeta/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return greenmeta::run_cli(argc, argv, std::cout, std::cerr); }
