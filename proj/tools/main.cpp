#include "qwsnm/cli.hpp"

int main(int argc, char** argv) { return qwsnm::run_cli(argc, argv); }
