#include "retract/cli.hpp"

int main(int argc, char** argv) { return retract::cli::run(argc, argv); }
