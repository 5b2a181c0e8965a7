#include <iostream>
#include <string>
#include <vector>

#include "ottofridge/cli/commands.hpp"

int main(int argc, char** argv) {
    return ottofridge::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
