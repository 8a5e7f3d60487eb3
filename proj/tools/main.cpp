#include "cli.hpp"

int main(int argc, char** argv) { return sceot::cli::main_entry(argc, argv); }
