#include "interp/cli.hpp"

int main(int argc, char** argv)
{
    return interp::cli_main(argc, argv);
}
