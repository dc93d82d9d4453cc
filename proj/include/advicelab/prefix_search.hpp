#pragma once

#include <cstdint>
#include <vector>

#include "advicelab/bitstring.hpp"
#include "advicelab/relation.hpp"
#include "advicelab/rng.hpp"

namespace advicelab {

// Sampling oracle configuration for prefix-probability queries. The decision
// threshold for a query at prefix z is threshold_factor * 3^{-|z|}; the
// promise gap sits at (2/3) * 3^{-|z|} vs (1/3) * 3^{-|z|}, so the midpoint
// factor 1/2 maximizes the Chernoff margin.
struct PrefixOracleConfig {
    uint64_t samples_per_query = 100000;
    double threshold_factor = 0.5;
};

struct PrefixQueryTrace {
    int step = 0;               // 1-based query index
    BitString z;                // prefix queried (before extension)
    double fraction = 0;        // empirical or exact mass of outputs with prefix z1
    bool answer = false;        // YES -> append 1
    double failure_bound = 0;   // per-query Chernoff bound (sampling mode only)
};

// Error parameter the solver is invoked at: 4^{-output_bits}.
double prefix_search_epsilon(int output_bits);

// Samples the solver and answers YES iff the fraction of outputs extending z
// with a 1 exceeds threshold_factor * 3^{-|z|}. Correct with probability
// >= 1 - 2 exp(-samples * 9^{-|z|} / 18) whenever (x, z) is in the promise.
bool prefix_oracle(const Solver& solver, const BitString& x, const BitString& z, int output_bits,
                   const PrefixOracleConfig& config, RngStream& rng,
                   PrefixQueryTrace* trace = nullptr);

// Exact-probability oracle over an enumerable solver; no sampling error.
bool prefix_oracle_exact(const EnumerableSolver& solver, const BitString& x, const BitString& z,
                         int output_bits, double threshold_factor = 0.5,
                         PrefixQueryTrace* trace = nullptr);

// Reconstructs an output bit by bit: starting from the empty prefix, appends
// 1 on YES and 0 on NO for output_bits steps. Makes exactly output_bits
// oracle queries. The solver must emit fixed-length outputs of output_bits
// bits and succeed with probability >= 1 - 4^{-output_bits}.
BitString prefix_search(const Solver& solver, const BitString& x, int output_bits,
                        const PrefixOracleConfig& config, RngStream& rng,
                        std::vector<PrefixQueryTrace>* trace = nullptr);

BitString prefix_search_exact(const EnumerableSolver& solver, const BitString& x, int output_bits,
                              double threshold_factor = 0.5,
                              std::vector<PrefixQueryTrace>* trace = nullptr);

}  // namespace advicelab
