#include "twi/cli.hpp"

int main(int argc, char** argv) { return twi::cli_main(argc, argv); }
