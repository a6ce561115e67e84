#include "bfweno/cli_io.hpp"

int main(int argc, char** argv) { return bfweno::cli::main(argc, argv); }
