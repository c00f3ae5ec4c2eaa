#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return hrql::cli_main(args, std::cout, std::cerr);
}
