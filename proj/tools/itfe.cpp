#include <iostream>
#include <string>
#include <vector>

#include "itfe/command.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.size() == 1 && args[0] == "batch") return itfe::run_batch(std::cin, std::cout, std::cerr);
    return itfe::run_command(args, std::cout, std::cerr);
}
