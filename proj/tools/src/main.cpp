#include <cstdio>
#include <string>
#include <vector>

#include "symkit_cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const symkit_cli::CliResult r = symkit_cli::run(args);
    if (!r.output.empty()) std::printf("%s\n", r.output.c_str());
    return r.exit_code;
}
