#include "galindex/cli.hpp"

int main(int argc, char** argv) {
    return galindex::cli::run(argc, argv);
}
