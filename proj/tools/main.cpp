#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    return sparse_asm::cli::run(argc, argv, std::cout, std::cerr);
}
