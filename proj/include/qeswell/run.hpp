#pragma once
#include <string>

namespace qeswell {

// everything the CLI surface passes down; negative/empty means "use the
// command's per-kind default"
struct CliOptions {
    std::string config;       // JSON config path (verify runs without one)
    std::string out;          // output path prefix
    double grid_L = -1.0;
    int grid_N = -1;
    int levels = -1;
    double psi_scale = 6.0;
    int jobs = 1;
    std::string expect;       // reference-table path for `nodal`
};

// dispatch one subcommand; returns the process exit code:
// 0 ok, 1 bad input, 2 solver failure, 3 verification mismatch
int run_command(const std::string& command, const CliOptions& opt);

} // namespace qeswell
