#include "kclans/cli.hpp"

int main(int argc, char** argv) { return kclans::cli::run(argc, argv); }
