#include "walkprove/cli.hpp"

int main(int argc, char** argv) { return walkprove::cli_main(argc, argv); }
