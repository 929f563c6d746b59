#include "offwhite/experiments.hpp"

int main(int argc, char** argv) { return offwhite::cli::cli_main(argc, argv); }
