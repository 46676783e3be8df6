#include "phasewave/cli.hpp"

int main(int argc, char** argv) { return phasewave::cli::run(argc, argv); }
