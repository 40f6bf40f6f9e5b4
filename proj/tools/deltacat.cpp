#include <deltacat/cli.hpp>

#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return deltacat::run_cli(args, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
