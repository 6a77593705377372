// Reusable engine behind the ale-central command line.  A RunConfig is a
// plain-data description of one job: which command, which surface type,
// which moduli, where the output goes.  run() executes it and returns the
// process exit status; the binary in tools/ only parses flags into a
// RunConfig, so tests can drive every observable behavior through this
// header without spawning processes.
//
// Output contract: reports are JSON (sampling defaults to CSV), written to
// config.out when set and to the supplied stream otherwise.  Field layouts
// are fixed and documented at each command below; JSON reports carry a
// "schema": 1 version marker.  Given the same config and seed the bytes
// written are identical from run to run.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ale {

// Exit statuses shared by run() and the ale-central binary.
inline constexpr int kRunPass = 0;     // every requested assertion held
inline constexpr int kRunFail = 1;     // a verification assertion failed
inline constexpr int kRunInvalid = 2;  // bad configuration or off-chamber moduli
inline constexpr int kRunIoError = 3;  // the output file could not be written

// Default seed of the randomized suites; every run is reproducible unless a
// different seed is requested.
inline constexpr std::uint64_t kDefaultSeed = 0x414c45ULL;

struct RunConfig {
    // One of: "verify-lattice", "verify-resolution", "sample", "periods",
    // "alf", "all".
    std::string command;

    // "A", "D", "E6", "E7" or "E8".  "all" needs no type.  verify-lattice
    // also accepts a rank suffix ("A5", "D6") as an alternative to `k`.
    std::string type_label;

    // Moduli as parsed from the command line.  `params` holds the numeric
    // values; `param_text` keeps the original spellings so the exact
    // commands can rebuild rationals ("3/2", "1.25") without rounding.
    std::vector<double> params;
    std::vector<std::string> param_text;

    double a0 = 0.0;     // E-type apex parameter (periods command)
    bool has_a0 = false;

    int k = 0;           // verify-lattice rank for type A or D; 0 picks 5 / 4

    int grid_p = 100;      // sample points along the interval coordinate
    int grid_theta = 100;  // sample points around the circle

    // D-type component index for sample/alf; -1 selects the central sphere,
    // which exists only for even k (odd k must name a component).
    int component = -1;

    bool alf_chart_requested = false;  // sample: use the ALF chart (type A)
    double tau = 1.0;                  // alf: flow time for the D-type flow

    std::string out;     // output path; empty writes to the stream
    std::string format;  // "csv" or "json"; empty picks the command default

    std::uint64_t seed = kDefaultSeed;

    // Overrides the documented report thresholds where a command states
    // that it honors the override; negative keeps the defaults.
    double tolerance = -1.0;

    // Worker threads for grid sampling; 0 means the hardware count.  The
    // environment variable ALE_CENTRAL_THREADS caps the value either way.
    unsigned threads = 0;
};

// Executes the configured command.  The report goes to config.out when set
// and to `out` otherwise; diagnostics (failure causes, the violated chamber
// wall, per-check progress of `all`) go to `diag`.  Invalid configurations
// are reported through the exit status, not exceptions.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

// Same, writing to std::cout / std::cerr.
int run(const RunConfig& config);

// One check of the full verification battery (the `all` command).  The
// detail string holds the measured numbers and is deterministic given the
// seed; `seconds` is wall time, reported on the diagnostic stream only so
// output files stay byte-identical across runs.
struct SuiteCheck {
    int id = 0;
    std::string label;
    std::string detail;
    bool pass = false;
    double seconds = 0.0;
};

// Runs the whole battery: exceptional-class counts, the cubic-surface
// divisor identities, the exceptional Dynkin bases, central-divisor
// pairings, resolution polynomial identities on seeded random root lists,
// the round two-center sphere, metric reconstruction, areas and periods,
// the D central sphere, the printed Tyurina variants, the ALF transforms,
// and the round curvature evolution.  `threads` is resolved like
// RunConfig::threads.
std::vector<SuiteCheck> verification_suite(std::uint64_t seed,
                                           unsigned threads);

// Splits "1,2,3/2,-0.5" into numeric values and kept spellings.  Fractions
// and decimals are allowed so the exact commands can keep their inputs
// exact.  Throws std::invalid_argument on malformed entries.
void parse_param_list(const std::string& text, std::vector<double>& values,
                      std::vector<std::string>& spellings);

// Parses a grid specification "200x100" (interval points x circle points).
// Throws std::invalid_argument unless both factors are positive integers.
std::pair<int, int> parse_grid(const std::string& text);

}  // namespace ale
