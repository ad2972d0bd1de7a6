#include "wass/cli.hpp"

int main(int argc, char** argv) { return wass::cli::run(argc, argv); }
