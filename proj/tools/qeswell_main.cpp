#include "qeswell/run.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"double-well spectra: closed-form wells, grid solver, scans, pattern tables"};
    app.require_subcommand(1);

    qeswell::CliOptions opt;
    std::vector<std::pair<const char*, const char*>> cmds = {
        {"potential", "tabulate V(r) (plus the scaled closed-form wave shape) and its well census"},
        {"solve", "lowest levels and eigenfunctions on the finite-difference grid"},
        {"scan-alc", "sweep a family parameter and locate spectral-gap minima"},
        {"scan-reloc", "sweep a family parameter and flag ground-density relocation jumps"},
        {"nodal", "lobe/node tables of the lowest states, optionally checked against a reference"},
        {"sextic", "polynomial triple-well family: exact vs numerical ground energy"},
        {"rectwell", "piecewise-constant double well: exact levels vs isolated-well ladders"},
        {"verify", "built-in cross-check suite, machine-readable pass/fail"},
    };
    for (const auto& [name, desc] : cmds) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config,-c", opt.config, "JSON config path");
        sub->add_option("--out,-o", opt.out, "output path prefix")->required();
        sub->add_option("--grid-L", opt.grid_L, "override box half-width");
        sub->add_option("--grid-N", opt.grid_N, "override interior grid points / sample count");
        sub->add_option("--levels,-k", opt.levels, "override number of levels");
        sub->add_option("--psi-scale", opt.psi_scale,
                        "wave-shape magnification in the potential CSV (default 6)");
        sub->add_option("--jobs,-j", opt.jobs, "scan worker threads");
        sub->add_option("--expect", opt.expect, "reference pattern table (nodal)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return qeswell::run_command(cmd, opt);
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 2;
    }
}
