#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return twc::cli::run(argc, argv, std::cout, std::cerr); }
