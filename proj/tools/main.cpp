#include "gaudin/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gaudin::cli::run(argc, argv, std::cout); }
