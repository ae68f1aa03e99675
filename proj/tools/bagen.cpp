#include "cli.hpp"

int main(int argc, char** argv) { return bagen::cli::cli_main(argc, argv); }
