#include "commands.hpp"

int main(int argc, char** argv)
{
    return mottlc::cli::run(argc, argv);
}
