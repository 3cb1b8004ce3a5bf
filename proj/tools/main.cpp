#include <string>
#include <vector>

#include "cusp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cusp::run_command(args);
}
