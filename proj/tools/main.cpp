#include <iostream>

#include "wedgelab/cli.hpp"

int main(int argc, char** argv) { return wedgelab::run(argc, argv, std::cout, std::cerr); }
