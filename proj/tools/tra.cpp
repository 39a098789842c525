#include <unistd.h>

#include <iostream>

#include "tra/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tra::cli::run(args, std::cin, std::cout, std::cerr, isatty(STDIN_FILENO) != 0);
}
