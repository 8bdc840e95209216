#include "fejer_cli.hpp"

int main(int argc, char** argv) { return fejer::cli::run(argc, argv); }
