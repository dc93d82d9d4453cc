#include "advicelab/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace advicelab {

void FiniteDistribution::add(const BitString& outcome, double p) {
    probs_[outcome] += p;
}

double FiniteDistribution::prob(const BitString& outcome) const {
    auto it = probs_.find(outcome);
    return it == probs_.end() ? 0.0 : it->second;
}

double FiniteDistribution::total_mass() const {
    double total = 0;
    for (const auto& [_, p] : probs_) {
        total += p;
    }
    return total;
}

bool FiniteDistribution::is_normalized(double tol) const {
    return std::abs(total_mass() - 1.0) <= tol;
}

double FiniteDistribution::prefix_mass(const BitString& prefix) const {
    double total = 0;
    for (const auto& [z, p] : probs_) {
        if (z.has_prefix(prefix)) {
            total += p;
        }
    }
    return total;
}

void FiniteDistribution::prune(double cutoff) {
    for (auto it = probs_.begin(); it != probs_.end();) {
        if (it->second <= cutoff) {
            it = probs_.erase(it);
        } else {
            ++it;
        }
    }
}

BitString FiniteDistribution::sample(RngStream& rng) const {
    if (probs_.empty()) {
        throw std::invalid_argument("FiniteDistribution::sample: empty distribution");
    }
    double u = rng.uniform();
    double cumulative = 0;
    for (const auto& [z, p] : probs_) {
        cumulative += p;
        if (u < cumulative) {
            return z;
        }
    }
    return probs_.rbegin()->first;
}

FiniteDistribution FiniteDistribution::point_mass(const BitString& outcome) {
    FiniteDistribution d;
    d.add(outcome, 1.0);
    return d;
}

FiniteDistribution FiniteDistribution::uniform(const std::vector<BitString>& outcomes) {
    if (outcomes.empty()) {
        throw std::invalid_argument("FiniteDistribution::uniform: empty outcome list");
    }
    FiniteDistribution d;
    for (const auto& z : outcomes) {
        d.add(z, 1.0 / double(outcomes.size()));
    }
    return d;
}

namespace {

void require_normalized(const FiniteDistribution& d, const char* who) {
    if (!d.is_normalized()) {
        throw std::invalid_argument(std::string(who) + ": distribution not normalized");
    }
}

}  // namespace

double tv_distance(const FiniteDistribution& p, const FiniteDistribution& q) {
    require_normalized(p, "tv_distance");
    require_normalized(q, "tv_distance");
    double total = 0;
    for (const auto& [z, pp] : p.support()) {
        total += std::abs(pp - q.prob(z));
    }
    for (const auto& [z, qq] : q.support()) {
        if (p.prob(z) == 0.0) {
            total += std::abs(qq);
        }
    }
    return total / 2;
}

double pointwise_max_diff(const FiniteDistribution& p, const FiniteDistribution& q) {
    double worst = 0;
    for (const auto& [z, pp] : p.support()) {
        worst = std::max(worst, std::abs(pp - q.prob(z)));
    }
    for (const auto& [z, qq] : q.support()) {
        worst = std::max(worst, std::abs(qq - p.prob(z)));
    }
    return worst;
}

}  // namespace advicelab
