#include <string>
#include <vector>

#include "wbench/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return wbench::run(args);
}
