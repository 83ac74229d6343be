#include "szree/cli.hpp"

int main(int argc, char** argv) { return szree::cli::run(argc, argv); }
