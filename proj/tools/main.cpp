#include "relfix/cli.hpp"

int main(int argc, char** argv) { return relfix::run_cli_main(argc, argv); }
