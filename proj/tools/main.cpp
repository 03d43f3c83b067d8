#include <iostream>

#include "whitney/cli.hpp"

int main(int argc, char** argv) { return whitney::run_cli(argc, argv, std::cout, std::cerr); }
