#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace advicelab {

// One batch experiment run. Optional fields switch subcommand modes; unset
// optionals are recorded as "-" in the output's config comment. All
// randomness flows from `seed` through labeled substreams, so a rerun with
// the same config produces byte-identical output files.
struct ExperimentConfig {
    std::string subcommand;
    int n = 4;
    uint64_t trials = 1000;
    double epsilon = 0.2;
    std::optional<double> lambda;
    std::optional<int> advice_bits;
    std::optional<uint64_t> k_subset;
    int p = 6;
    uint64_t samples = 100000;
    std::optional<double> threshold;
    uint64_t seed = 1;
    std::string out_path;  // empty -> per-subcommand default
    std::string format = "csv";
    int threads = 0;  // 0 -> ADVICE_LAB_THREADS / 1
};

std::string default_out_path(const std::string& subcommand);

// Dispatches to the subcommand, writes the report (and plot data for sweep
// subcommands) atomically, and returns the process exit code: 0 on success,
// 2 on a configuration error, 3 on a capacity-guard rejection.
int run_experiment(const ExperimentConfig& config);

}  // namespace advicelab
