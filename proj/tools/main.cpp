#include "cli.hpp"

int main(int argc, char** argv) { return rotavg::cli::run(argc, argv); }
