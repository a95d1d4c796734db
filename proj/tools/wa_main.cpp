#include <iostream>

#include "wa/cli.hpp"

int main(int argc, char** argv) { return wa::run_command(argc, argv, std::cout, std::cerr); }
