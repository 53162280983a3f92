#include <iostream>

#include "pidloop/cli.hpp"

int main(int argc, char** argv) {
    return pidloop::cli::run_cli(argc, argv, std::cout, std::cerr);
}
