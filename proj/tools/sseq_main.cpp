#include "sseq/cli.hpp"

int main(int argc, char** argv) { return sseq::run_cli(argc, argv); }
