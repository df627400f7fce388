#include <iostream>

#include "fracsob/cli.hpp"

int main(int argc, char** argv) { return fracsob::run_cli(argc, argv, std::cout, std::cerr); }
