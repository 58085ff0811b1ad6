#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
    CLI::App app{"rigorous renormalization fixed point prover"};
    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);
    std::fprintf(stderr, "no subcommands implemented yet\n");
    return 2;
}
