#include "cli.hpp"

int main(int argc, char** argv) { return convnls::cli::run(argc, argv); }
