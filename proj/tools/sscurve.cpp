#include <iostream>

#include "sscurve/cli.hpp"

int main(int argc, char** argv) { return sscurve::run_cli({argv + 1, argv + argc}, std::cout, std::cerr); }
