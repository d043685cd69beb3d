#include "commands.hpp"

int main(int argc, char** argv) { return citenorm::cli::run_cli(argc, argv); }
