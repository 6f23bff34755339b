#include <iostream>

#include <multibell/cli.hpp>

int main(int argc, char** argv) {
    return multibell::cli::run_main(argc, argv, std::cout, std::cerr);
}
