#include "cli.hpp"

int main(int argc, char** argv) { return twl::cli::run(argc, argv); }
