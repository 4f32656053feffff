#include "cxn/cli.hpp"

int main(int argc, char** argv) { return cxn::cli_main(argc, argv); }
