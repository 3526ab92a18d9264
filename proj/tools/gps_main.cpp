#include <iostream>

#include "gps/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gps::run(args, std::cout, std::cerr);
}
