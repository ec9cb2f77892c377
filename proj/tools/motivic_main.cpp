#include "motivic/cli.hpp"

int main(int argc, char** argv)
{
    return motivic::cli::run_main(argc, argv);
}
