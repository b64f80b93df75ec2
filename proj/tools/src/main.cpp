#include <iostream>

#include "runner.hpp"

int main(int argc, char** argv) { return xlayer::cli::run(argc, argv, std::cout, std::cerr); }
