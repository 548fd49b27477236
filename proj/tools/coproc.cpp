#include "coproc/cli.hpp"

int main(int argc, char** argv) { return coproc::cli::main(argc, argv); }
