#include "tgeo/cli.hpp"

int main(int argc, char** argv) { return tgeo::run_cli(argc, argv); }
