#include "finres/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return finres::run_cli(argc, argv, std::cout, std::cerr);
}
