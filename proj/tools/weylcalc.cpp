#include <iostream>

#include "weyl/cli.hpp"

int main(int argc, char **argv) { return weyl::run_cli(argc, argv, std::cout, std::cerr); }
