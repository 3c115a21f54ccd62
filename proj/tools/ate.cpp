#include "ate/cli.hpp"

int main(int argc, char** argv) { return ate::cli::run_main(argc, argv); }
