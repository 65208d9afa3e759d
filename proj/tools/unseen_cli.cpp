#include "unseen/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return unseen::cli::run(argc, argv, std::cout, std::cerr); }
