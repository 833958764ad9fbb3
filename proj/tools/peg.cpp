#include <iostream>

#include "peg/cli.hpp"

int main(int argc, char** argv)
{
    return peg::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
