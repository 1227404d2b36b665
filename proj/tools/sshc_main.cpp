#include <iostream>

#include "sshc/cli/commands.hpp"

int main(int argc, char** argv) {
    return sshc::cli::run_cli(argc, argv, std::cout, std::cerr);
}
