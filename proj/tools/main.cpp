#include "lossblockade/cli.hpp"

int main(int argc, char** argv) { return lossblockade::cli::run(argc, argv); }
