#include "sepkit_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sepkit::cli::run(argc, argv, std::cout, std::cerr); }
