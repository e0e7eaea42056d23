#include "cli_app.hpp"

int main(int argc, char** argv) { return matvine::cli::run(argc, argv); }
