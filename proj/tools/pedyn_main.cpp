#include "pedyn/cli.hpp"

int main(int argc, char** argv) {
    return pedyn::run_cli(argc, argv);
}
