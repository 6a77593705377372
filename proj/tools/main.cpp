// ale-central: command-line front end for the core verification library.
//
// Subcommands
//   verify-lattice     Dynkin root basis, central-divisor pairings and
//                      boundary orthogonality, as exact integer identities
//   verify-resolution  defining identities of the D-type simultaneous
//                      resolution over exact rationals
//   sample             grid samples of a central-sphere metric (CSV/JSON)
//   periods            simple-root periods and sphere areas for a modulus
//   alf                ALF deformation checks (type A chart, type D flow)
//   all                the whole verification battery, one line per check
//
// Exit codes: 0 pass, 1 a verification failed, 2 invalid parameters or
// off-chamber moduli, 3 file I/O failure.

#include <exception>
#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "ale/run.hpp"

namespace {

// Options shared by every subcommand, parsed into strings first so the
// exact spellings survive (verify-resolution wants the rational "3/2", not
// its double).
struct RawOptions {
    std::string type;
    std::string params;
    double a0 = 0.0;
    bool has_a0 = false;
    int k = 0;
    std::string grid;
    int component = -1;
    bool alf_chart = false;
    double tau = 1.0;
    std::string out;
    std::string format;
    std::uint64_t seed = ale::kDefaultSeed;
    double tolerance = -1.0;
    unsigned threads = 0;
};

void add_common_options(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--out", raw.out, "write the report to this file");
    cmd->add_option("--seed", raw.seed, "seed for randomized checks");
    cmd->add_option("--threads", raw.threads,
                    "worker threads (0 = hardware; ALE_CENTRAL_THREADS caps)");
}

ale::RunConfig to_config(const std::string& command, const RawOptions& raw) {
    ale::RunConfig cfg;
    cfg.command = command;
    cfg.type_label = raw.type;
    if (!raw.params.empty())
        ale::parse_param_list(raw.params, cfg.params, cfg.param_text);
    cfg.a0 = raw.a0;
    cfg.has_a0 = raw.has_a0;
    cfg.k = raw.k;
    if (!raw.grid.empty()) {
        const auto [n_p, n_theta] = ale::parse_grid(raw.grid);
        cfg.grid_p = n_p;
        cfg.grid_theta = n_theta;
    }
    cfg.component = raw.component;
    cfg.alf_chart_requested = raw.alf_chart;
    cfg.tau = raw.tau;
    cfg.out = raw.out;
    cfg.format = raw.format;
    cfg.seed = raw.seed;
    cfg.tolerance = raw.tolerance;
    cfg.threads = raw.threads;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ALE central-sphere toolkit: exact lattice and resolution checks, "
        "numeric sphere metrics, periods and ALF deformations"};
    app.require_subcommand(1);

    RawOptions raw;
    std::string command;

    CLI::App* verify_lattice = app.add_subcommand(
        "verify-lattice",
        "verify a Dynkin root basis and the central-divisor pairings");
    verify_lattice->add_option("--type", raw.type,
                               "root system: A, D, E6, E7 or E8")
        ->required();
    verify_lattice->add_option("--k", raw.k, "rank for types A and D");
    add_common_options(verify_lattice, raw);

    CLI::App* verify_resolution = app.add_subcommand(
        "verify-resolution",
        "verify the resolution polynomial identities over exact rationals");
    verify_resolution->add_option("--type", raw.type, "must be D")->required();
    verify_resolution
        ->add_option("--params", raw.params,
                     "roots a_1,...,a_k as integers or fractions, e.g. "
                     "1,2,3/2,4")
        ->required();
    add_common_options(verify_resolution, raw);

    CLI::App* sample = app.add_subcommand(
        "sample", "sample a central-sphere metric on a grid");
    sample->add_option("--type", raw.type, "surface type: A or D")->required();
    sample
        ->add_option("--params", raw.params,
                     "moduli a_1,...,a_n in chamber order, e.g. -1,1")
        ->required();
    sample->add_option("--grid", raw.grid, "grid size, e.g. 100x100");
    sample->add_option("--component", raw.component,
                       "D only: compact interval index (default: central)");
    sample->add_flag("--alf", raw.alf_chart, "A only: sample the ALF chart");
    sample->add_option("--format", raw.format, "csv (default) or json");
    add_common_options(sample, raw);

    CLI::App* periods = app.add_subcommand(
        "periods", "simple-root periods and sphere areas");
    periods->add_option("--type", raw.type, "A, D, E6, E7 or E8")->required();
    periods
        ->add_option("--params", raw.params,
                     "moduli (A/D: the a_i; E: the marked points a_1,...)")
        ->required();
    periods->add_option("--a0", raw.a0, "E only: tangent-line parameter")
        ->each([&raw](const std::string&) { raw.has_a0 = true; });
    add_common_options(periods, raw);

    CLI::App* alf = app.add_subcommand(
        "alf", "ALF deformation checks (types A and D)");
    alf->add_option("--type", raw.type, "A or D")->required();
    alf->add_option("--params", raw.params, "moduli a_1,...,a_n")->required();
    alf->add_option("--grid", raw.grid, "A only: sample grid, e.g. 40x8");
    alf->add_option("--component", raw.component,
                    "D only: compact interval index (default: central)");
    alf->add_option("--tau", raw.tau, "D only: flow time (default 1)");
    alf->add_option("--tolerance", raw.tolerance,
                    "override the headline tolerance");
    add_common_options(alf, raw);

    CLI::App* all = app.add_subcommand(
        "all", "run the whole verification battery");
    add_common_options(all, raw);

    for (CLI::App* cmd : {verify_lattice, verify_resolution, sample, periods,
                          alf, all})
        cmd->callback([&command, cmd] { command = cmd->get_name(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ale::kRunInvalid;
    }

    try {
        return ale::run(to_config(command, raw));
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return ale::kRunInvalid;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return ale::kRunFail;
    }
}
