#include "gecscore/cli.hpp"

int main(int argc, char** argv) { return gecscore::cli::run(argc, argv); }
