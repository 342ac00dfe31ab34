#include <string>
#include <vector>

#include "netdecay/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return netdecay::cli::run(args);
}
