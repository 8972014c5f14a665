#pragma once

#include <map>
#include <string>
#include <vector>

#include "pyrofront/pde.hpp"

namespace pyrofront {

/// Outcome of one named scenario: measured quantities against their pinned
/// thresholds.  pass is a pure function of measured vs threshold; runtime
/// is informational only and excluded from determinism comparisons.
struct ScenarioReport {
    std::string scenario_id;
    std::string claim_ref;
    std::map<std::string, double> measured;
    std::map<std::string, double> threshold;
    bool pass = false;
    long long runtime_ms = 0;
};

/// Shared options for scenario runs.
///  - out_dir: directory for detail CSVs; empty → no files are written.
///  - overrides: numeric parameter overrides, keyed "<scenario_id>.<param>".
///    Keys addressed to other registered scenarios are ignored (so one map
///    can be broadcast through run_all); an unregistered scenario prefix or
///    an unknown parameter name is an ArgumentError.
///  - threads: worker count for run_all (0 → hardware concurrency).
struct VerifyOptions {
    std::string out_dir;
    std::map<std::string, double> overrides;
    int threads = 0;
};

/// Registered scenario ids, sorted.
std::vector<std::string> scenario_ids();

/// Coarse grouping tag of a scenario: "pde", "wave", "stability", "figure".
std::string scenario_tag(const std::string& id);

/// The claim identifier a scenario certifies (stable across runs).
std::string scenario_claim(const std::string& id);

/// Runs one scenario to a deterministic report; unknown id → ArgumentError.
ScenarioReport run_scenario(const std::string& id, const VerifyOptions& options = {});

/// Runs every registered scenario (optionally filtered by tag), possibly in
/// parallel; reports are returned sorted by scenario_id regardless of the
/// execution schedule.
std::vector<ScenarioReport> run_all(const std::string& tag = {},
                                    const VerifyOptions& options = {});

/// Named evolution presets reused by the command-line front end:
/// "frozen_a", "frozen_b", "invasion", "extinction", "boundary_ignition",
/// "necessity".  Unknown name → ArgumentError.
ProblemSpec preset_problem(const std::string& name);

/// Least-squares slope of ys against xs (at least two distinct xs).
double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// Ledger export: header `scenario_id,claim_ref,pass,runtime_ms`.
void write_ledger_csv(const std::string& path,
                      const std::vector<ScenarioReport>& reports);

}  // namespace pyrofront
