#include "vortex/cli.hpp"

int main(int argc, char** argv) { return vortex::cli::main(argc, argv); }
