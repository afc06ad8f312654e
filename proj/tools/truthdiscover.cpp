#include <iostream>

#include "truthdiscover/cli.hpp"

int main(int argc, char** argv) { return truthdiscover::run_cli(argc, argv, std::cout, std::cerr); }
