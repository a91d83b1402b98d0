// Writes a table of zeta-zero ordinates up to a given height.
//
//   gen_zeros --t-max 200000 --out zeros.txt [--binary]

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <vector>

#include "psibound/errors.hpp"
#include "psibound/zeros.hpp"
#include "riemann_siegel.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Zeta-zero table generator (Riemann-Siegel / Euler-Maclaurin, Gram blocks)"};
    double t_max = 0.0;
    std::string out;
    bool binary = false;
    bool quiet = false;
    app.add_option("--t-max", t_max, "Largest ordinate covered by the table")->required()->check(CLI::Range(15.0, 6.0e6));
    app.add_option("--out", out, "Output path")->required();
    app.add_flag("--binary", binary, "Write the binary ZTAB format");
    app.add_flag("--quiet", quiet, "No progress output");
    CLI11_PARSE(app, argc, argv);

    const auto start = std::chrono::steady_clock::now();
    zetazeros::FinderOptions opt;
    opt.t_end = t_max;
    std::vector<double> zeros;
    try {
        zeros = zetazeros::find_zeros(opt, [&](double g) {
            if (!quiet) std::fprintf(stderr, "\rheight %.0f", g);
        });
    } catch (const std::exception& e) {
        std::fprintf(stderr, "\nzero search failed: %s\n", e.what());
        return 2;
    }
    if (!quiet) std::fprintf(stderr, "\n");

    std::vector<psibound::DoubleDouble> gammas(zeros.begin(), zeros.end());
    try {
        psibound::ZeroTable table(std::move(gammas), 1e-9, t_max);
        psibound::write_zeros(table, out, binary ? psibound::ZeroFormat::Binary : psibound::ZeroFormat::Text);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("wrote %zu zeros up to %.6g to %s in %.1f s\n", table.size(), t_max, out.c_str(), secs);
    } catch (const psibound::Error& e) {
        std::fprintf(stderr, "table rejected: %s\n", e.what());
        return 3;
    }
    return 0;
}
