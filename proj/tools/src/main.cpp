#include "tension2d_cli/commands.hpp"

int main(int argc, char** argv) { return tension2d::cli::run(argc, argv); }
