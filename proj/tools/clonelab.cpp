#include "cli.hpp"

int main(int argc, char** argv) { return clonelab::cli::main_entry(argc, argv, std::cout, std::cerr); }
