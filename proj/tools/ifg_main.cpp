#include "ifg/cli.hpp"

int main(int argc, char** argv)
{
    return ifg::cli::run(argc, argv);
}
