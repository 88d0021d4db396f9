#include "qnc/cli.hpp"

int main(int argc, char** argv) { return qnc::cli_dispatch(argc, argv); }
