#include "bbpg/cli.hpp"

int main(int argc, char** argv) { return bbpg::run_cli(argc, argv); }
