#include <iostream>
#include <string>
#include <vector>

#include "s2g/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return s2g::cli::run_cli(args, std::cin, std::cout, std::cerr);
}
