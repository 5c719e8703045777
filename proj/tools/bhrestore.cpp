#include "bhtv/cli.hpp"

int main(int argc, char** argv) { return bhtv::cli::run(argc, argv); }
