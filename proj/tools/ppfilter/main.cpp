#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return ppfilter::run(argc, argv, std::cout, std::cerr); }
