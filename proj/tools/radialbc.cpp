#include "radialbc/cli/run.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return radialbc::cli::main_entry({argv, argv + argc}, std::cout, std::cerr);
}
