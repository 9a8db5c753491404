#include "vacprobe/sweep.hpp"

int main(int argc, char** argv) { return vacprobe::cli_main(argc, argv); }
