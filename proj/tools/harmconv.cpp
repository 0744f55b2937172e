#include "harmconv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return harmconv::run_cli(argc, argv, std::cout, std::cerr); }
