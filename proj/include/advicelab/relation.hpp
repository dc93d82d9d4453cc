#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "advicelab/bitstring.hpp"
#include "advicelab/distribution.hpp"
#include "advicelab/rng.hpp"

namespace advicelab {

// A relational problem at a fixed input length: given x, any y with
// check(x, y) true is a valid answer. Outputs use a fixed-length encoding of
// at most output_bits bits (the declared polynomial bound on |y|). check must
// be a pure deterministic predicate.
struct Relation {
    std::string name;
    int input_bits = 0;
    int output_bits = 0;
    std::function<bool(const BitString& x, const BitString& y)> check;
};

// A randomized answer-finding procedure with an error parameter. Must be
// deterministic given (x, epsilon, rng state). resource_note is free-form
// text for reports only.
struct Solver {
    std::string resource_note;
    std::function<BitString(const BitString& x, double epsilon, RngStream& rng)> solve;
};

// A solver whose full outcome distribution can be written down exactly.
// Feasible only at small n; used for exact success probabilities and as the
// reference side of sampling-vs-exact checks.
struct EnumerableSolver {
    std::string resource_note;
    std::function<FiniteDistribution(const BitString& x, double epsilon)> distribution;
};

struct SuccessEstimate {
    uint64_t successes = 0;
    uint64_t trials = 0;
    double point = 0;
    double ci_low = 0;
    double ci_high = 0;
    double confidence = 0.99;
    uint64_t seed = 0;

    bool operator==(const SuccessEstimate&) const = default;
};

struct WilsonInterval {
    double low = 0;
    double high = 0;
};

// Inverse standard normal CDF (Acklam's rational approximation, relative
// error ~1e-9). p in (0, 1).
double normal_quantile(double p);

// Wilson score interval, clipped to [0, 1]. Preferred over the normal
// approximation because many experiments here sit at p close to 1.
WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double confidence);

// Runs the solver `trials` times on independent rng substreams (substream i
// for trial i) and counts outcomes accepted by relation.check. Trial results
// are independent of thread count. Any solver exception aborts the whole
// estimate. Every output must fit the relation's declared output length.
SuccessEstimate estimate_success(const Solver& solver, const Relation& relation, const BitString& x,
                                 double epsilon, uint64_t trials, const RngStream& rng,
                                 double confidence = 0.99, int threads = 1);

// sum p(outcome) * [check(x, outcome)] over the solver's exact outcome
// distribution. The distribution must be normalized.
double exact_success(const EnumerableSolver& solver, const Relation& relation, const BitString& x,
                     double epsilon = 1.0);

// Thread count from the ADVICE_LAB_THREADS environment variable, capped by
// hardware concurrency; 1 when unset or unparsable.
int configured_thread_count();

// Invokes fn(begin, end) over contiguous chunks of [0, count) on `threads`
// threads. Exceptions are captured and the first one is rethrown.
void parallel_chunks(uint64_t count, int threads,
                     const std::function<void(uint64_t begin, uint64_t end)>& fn);

}  // namespace advicelab
