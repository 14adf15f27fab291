#include "specband/cli_main.hpp"

int main(int argc, char** argv) {
    return specband::cli::run_main(argc, argv);
}
