#include <iostream>
#include <string>
#include <vector>

#include "gbsp/bench.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gbsp::bench::run_cli(args, std::cout, std::cerr);
}
