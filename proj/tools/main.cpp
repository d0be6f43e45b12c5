#include <iostream>

#include "qmexpect/cli.hpp"

int main(int argc, char** argv) { return qmexpect::run_cli(argc, argv, std::cout, std::cerr); }
