#include "fano/cli.hpp"

int main(int argc, char** argv) { return fano::cli::main_entry(argc, argv); }
