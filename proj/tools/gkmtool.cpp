#include "gkm/cli.hpp"

int main(int argc, char** argv) { return gkm::run_cli(argc, argv); }
