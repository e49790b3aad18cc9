#include <iostream>
#include <string>
#include <vector>

#include "mcvd/config.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mcvd::cli_main(args, std::cout, std::cerr);
}
