#include "nmpl/cli.hpp"

int main(int argc, char** argv) { return nmpl::cli::run(argc, argv); }
