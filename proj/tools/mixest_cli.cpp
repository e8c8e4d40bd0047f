#include <iostream>

#include "mixest/cli.hpp"

int main(int argc, char** argv) { return mixest::run_cli(argc, argv, std::cout, std::cerr); }
