#include "smile/cli.hpp"

int main(int argc, char** argv) { return smile::cli_main(argc, argv); }
