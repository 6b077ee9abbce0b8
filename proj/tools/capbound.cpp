#include <iostream>

#include "capbound_cli.hpp"

int main(int argc, char** argv) { return capbound::cli::run(argc, argv, std::cout, std::cerr); }
