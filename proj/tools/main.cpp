#include "ezstab/runner.hpp"

int main(int argc, char** argv) { return ezstab::cli::cli_main(argc, argv); }
