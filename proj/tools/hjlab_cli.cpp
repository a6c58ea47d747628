#include "hjlab/cli.hpp"

int main(int argc, char** argv) { return hjlab::run(argc, argv); }
