#include "tmpp/cli.hpp"

int main(int argc, char** argv) { return tmpp::cli::run(argc, argv); }
