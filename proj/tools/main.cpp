#include <iostream>
#include <string>
#include <vector>

#include "pathcover/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return pathcover::cli::run(args, std::cout, std::cerr);
}
