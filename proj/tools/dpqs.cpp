#include "dpqs/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return dpqs::cli::run(argc, argv, std::cout, std::cerr);
}
