#include <iostream>

#include "cld/cli.hpp"

int main(int argc, char** argv) { return cld::cli_main(argc, argv, std::cout, std::cerr); }
