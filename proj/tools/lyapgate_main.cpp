#include "lyapgate/cli.hpp"

int main(int argc, char** argv) { return lyapgate::run_cli(argc, argv); }
