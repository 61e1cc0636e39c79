#include "zerofree/cli.hpp"

int main(int argc, char** argv) { return zf::cli::run(argc, argv); }
