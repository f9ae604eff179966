#include <iostream>

#include "crloop/cli/commands.hpp"

int main(int argc, char** argv) { return crl::run_cli(argc, argv, std::cout, std::cerr); }
