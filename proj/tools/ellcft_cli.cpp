#include "cli_commands.hpp"
int main(int argc, char** argv) { return ellcft::cli::run(argc, argv); }
