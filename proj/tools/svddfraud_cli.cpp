#include "cli.hpp"

int main(int argc, char** argv) { return svddfraud::cli::run(argc, argv); }
