#include <asymnet/cli.hpp>

int main(int argc, char** argv)
{
    return asymnet::cli::main(argc, argv);
}
