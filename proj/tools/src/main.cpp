#include <iostream>
#include <vector>

#include "lotl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lotl::run_cli(args, std::cout, std::cerr);
}
