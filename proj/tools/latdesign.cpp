#include "latdesign/cli.hpp"

int main(int argc, char** argv) { return latdesign::run_cli(argc, argv); }
