#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "advicelab/bitstring.hpp"
#include "advicelab/distribution.hpp"
#include "advicelab/relation.hpp"
#include "advicelab/rng.hpp"

namespace advicelab {

// A distribution over advice strings, parameterized by the error level: the
// sampler at error epsilon must always emit strings of one fixed length.
struct RandomizedAdvice {
    std::string description;
    std::function<BitString(double epsilon, RngStream& rng)> sample;
};

// A fixed list of draws from a randomized advice distribution, used as
// deterministic advice.
struct DerandomizedAdvice {
    std::vector<BitString> samples;

    uint64_t k() const { return samples.size(); }
};

// ceil(100 * n / epsilon^2), the sample count that makes the union bound
// 2^n * exp(-k eps^2 / 2) negligible.
uint64_t derandomized_sample_count(int n, double epsilon);

// Draws k = derandomized_sample_count(n, epsilon) samples from the advice
// distribution at error parameter epsilon/2, in draw order. All samples must
// share one length.
DerandomizedAdvice derandomize_advice(const RandomizedAdvice& advice, int n, double epsilon,
                                      RngStream& rng);

// Picks i uniformly from the stored samples and runs the solver with advice
// w_i. Callers invoke the underlying solver at error epsilon/2 to match the
// sampling level of derandomize_advice.
BitString pick_and_run(const DerandomizedAdvice& advice,
                       const std::function<BitString(const BitString& x, const BitString& w,
                                                     RngStream& rng)>& solver,
                       const BitString& x, RngStream& rng);

// log of the union bound 2^n * exp(-k eps^2 / 2); kept in log space so the
// assertion cannot underflow.
double derandomization_union_bound_log(int n, uint64_t k, double epsilon);

// Per-input forbidden sets S_x of exactly 2^{floor(n/2)} n-bit strings,
// sampled without replacement by seeded reservoir selection keyed on
// (seed, x). Instances are cheap handles; sets are materialized per call.
class AvoidSetInstance {
   public:
    AvoidSetInstance(int n, uint64_t seed);

    int n() const { return n_; }
    uint64_t seed() const { return seed_; }
    uint64_t forbidden_count() const { return uint64_t(1) << (n_ / 2); }
    std::vector<uint32_t> forbidden_set(const BitString& x) const;
    bool contains(const BitString& x, const BitString& y) const;

   private:
    int n_;
    uint64_t seed_;
};

// true iff y is outside the forbidden set S_x.
bool avoid_relation_check(const AvoidSetInstance& inst, const BitString& x, const BitString& y);

// Relation wrapper over avoid_relation_check (output length n).
Relation avoid_relation(const AvoidSetInstance& inst);

// Exact output distribution per advice string for the distinct-count
// enumeration below.
using AdviceIndexedSampler = std::function<FiniteDistribution(const BitString& advice)>;

// Enumerates all 2^b advice strings, computes each exact output distribution,
// and counts distributions that are pairwise distinct (pointwise difference
// over 1e-12). Guarded at b <= 12, n <= 4 (n bounds the output domain).
uint64_t distinct_distribution_count(const AdviceIndexedSampler& algorithm, int b, int n);

// The uniform-element sampling task: returns a uniform member of S (the
// randomized advice itself solves the task). S must be nonempty.
BitString sampbpp_rpoly_uniform_task(const std::vector<BitString>& S, RngStream& rng);

}  // namespace advicelab
