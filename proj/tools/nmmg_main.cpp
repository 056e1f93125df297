#include "nmmg/cli.hpp"

int main(int argc, char** argv) { return nmmg::cli_main(argc, argv); }
