#include "sacrp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sacrp::run_cli(argc, argv, std::cout, std::cerr); }
