#include "biblio/cli.hpp"

int main(int argc, char** argv) {
    return biblio::run_cli(argc, argv);
}
