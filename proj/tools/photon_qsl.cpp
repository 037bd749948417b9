// photon_qsl.cpp — command-line entry point.

#include <iostream>

#include "pqsl/harness/cli.hpp"

int main(int argc, char** argv) {
    return pqsl::harness::run_cli(argc, argv, std::cout, std::cerr);
}
