#include <iostream>

#include "expsum_app.hpp"

int main(int argc, char** argv) { return expsum::cli::run(argc, argv, std::cout, std::cerr); }
