#include <iostream>

#include "qwspec/cli.hpp"

int main(int argc, char** argv) { return qwspec::run_cli(argc, argv, std::cout, std::cerr); }
