#include "immunet/cli.hpp"

int main(int argc, char** argv) { return immunet::cli::run(argc, argv); }
