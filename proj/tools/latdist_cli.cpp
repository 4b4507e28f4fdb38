#include <iostream>

#include "latdist/cli.hpp"

int main(int argc, char** argv)
{
    return latdist::cli::run(argc, argv, std::cout, std::cerr);
}
