#include "cli.hpp"

int main(int argc, char** argv) { return mupoly::cli::run(argc, argv); }
