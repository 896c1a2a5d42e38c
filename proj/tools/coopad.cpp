#include "coopad/cli.hpp"

int main(int argc, char** argv) { return coopad::run_cli(argc, argv); }
