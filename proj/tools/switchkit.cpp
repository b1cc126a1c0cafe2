#include "switchkit/cli.hpp"

int main(int argc, char** argv) { return switchkit::run_cli(argc, argv); }
