#include "rclab/experiments.hpp"

int main(int argc, char** argv) { return rclab::experiments::cli_main(argc, argv); }
