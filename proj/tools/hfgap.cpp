#include "hfgap/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return hfgap::cli::run(argc, argv, std::cout, std::cerr);
}
