#pragma once

#include <map>

#include "advicelab/bitstring.hpp"
#include "advicelab/rng.hpp"

namespace advicelab {

// Exact finite distribution over bit strings. Support is kept sorted so that
// iteration, sampling and comparison are deterministic.
class FiniteDistribution {
   public:
    static constexpr double kNormalizationTolerance = 1e-9;

    void add(const BitString& outcome, double p);
    double prob(const BitString& outcome) const;
    double total_mass() const;
    bool is_normalized(double tol = kNormalizationTolerance) const;
    size_t support_size() const { return probs_.size(); }
    const std::map<BitString, double>& support() const { return probs_; }

    // Total probability of outcomes that start with `prefix`.
    double prefix_mass(const BitString& prefix) const;
    // Drops entries with probability <= cutoff.
    void prune(double cutoff);
    // CDF walk over the sorted support with a single uniform draw.
    BitString sample(RngStream& rng) const;

    static FiniteDistribution point_mass(const BitString& outcome);
    static FiniteDistribution uniform(const std::vector<BitString>& outcomes);

   private:
    std::map<BitString, double> probs_;
};

// 1/2 * sum |p(z) - q(z)|. Both inputs must be normalized within
// FiniteDistribution::kNormalizationTolerance.
double tv_distance(const FiniteDistribution& p, const FiniteDistribution& q);

// Largest |p(z) - q(z)| over the union of supports.
double pointwise_max_diff(const FiniteDistribution& p, const FiniteDistribution& q);

}  // namespace advicelab
