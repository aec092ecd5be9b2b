#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sisi/sisi.hpp"

namespace sisi::cli {

struct Options {
    std::string config;  // empty: built-in defaults
    std::filesystem::path out = ".";
    std::optional<double> beta;
    std::optional<double> upsilon;
    bool dump_config = false;

    // bifurcation only
    double r0_lo = 0.95;
    double r0_hi = 1.05;
    std::size_t points = 101;
};

inline const std::vector<std::string_view> kCommands = {"r0",        "threshold",   "equilibria",
                                                        "stability", "simulate",    "bifurcation",
                                                        "sensitivity", "reproduce-paper"};

/// Config file (if any) with the command-line overrides applied, validated.
Scenario resolve_scenario(const Options& opt);

/// Runs one subcommand. The human summary goes to `out`; any library error is
/// reported on `err` as a single JSON line and mapped to its exit code.
int run_command(std::string_view name, const Options& opt, std::ostream& out, std::ostream& err);

/// Single-line JSON error record.
std::string error_record(std::string_view command, const std::exception& e);

int exit_code_of(const std::exception& e);

// Individual subcommands. Each writes its CSV artifacts into `dir` and a
// summary to `out`, and returns the names of the files it wrote.
std::vector<std::string> cmd_r0(const Scenario& sc, std::ostream& out);
std::vector<std::string> cmd_threshold(const Scenario& sc, const std::filesystem::path& dir, std::ostream& out);
std::vector<std::string> cmd_equilibria(const Scenario& sc, const std::filesystem::path& dir, std::ostream& out);
std::vector<std::string> cmd_stability(const Scenario& sc, const std::filesystem::path& dir, std::ostream& out);
std::vector<std::string> cmd_simulate(const Scenario& sc, const std::filesystem::path& dir, std::ostream& out);
std::vector<std::string> cmd_bifurcation(const Scenario& sc, double lo, double hi, std::size_t n,
                                         const std::filesystem::path& dir, std::ostream& out);
std::vector<std::string> cmd_sensitivity(const Scenario& sc, const std::filesystem::path& dir, std::ostream& out);

/// Regenerates every figure and table target into a fresh timestamped
/// subdirectory of `root`, writing manifest.json last. Returns that directory.
std::filesystem::path reproduce_paper(const std::filesystem::path& root, std::ostream& out);

}  // namespace sisi::cli
