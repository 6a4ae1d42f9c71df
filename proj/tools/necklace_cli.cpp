#include "necklace/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return necklace::run_cli(argc, argv, std::cout, std::cerr);
}
