#include <iostream>

#include "kmt/cli.hpp"

int main(int argc, char** argv) { return kmt::run_command(argc, argv, std::cout, std::cerr); }
