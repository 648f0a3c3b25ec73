#include "txpolicy/commands.hpp"

int main(int argc, char** argv) { return txpolicy::cli_main(argc, argv); }
