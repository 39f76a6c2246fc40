#include "fuzex/cli.hpp"

int main(int argc, char** argv) { return fuzex::run_cli(argc, argv); }
