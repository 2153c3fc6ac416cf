#include <iostream>
#include <string>
#include <vector>

#include "nrs/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nrs::cli_run(std::move(args), std::cout, std::cerr);
}
