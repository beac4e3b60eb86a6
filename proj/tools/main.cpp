#include "dform/cli.hpp"

int main(int argc, char** argv) { return dform::run_cli(argc, argv); }
