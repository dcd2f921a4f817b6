#include "cli.hpp"

int main(int argc, char** argv) { return vmet::cli::run(argc, argv); }
