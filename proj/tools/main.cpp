#include "thermdec/cli.hpp"

int main(int argc, char** argv) { return thermdec::cli::run_cli(argc, argv); }
