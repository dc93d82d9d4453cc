#include "advicelab/derandomize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "advicelab/errors.hpp"

namespace advicelab {

uint64_t derandomized_sample_count(int n, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("derandomized_sample_count: epsilon must be in (0,1]");
    }
    return uint64_t(std::ceil(100.0 * double(n) / (epsilon * epsilon)));
}

DerandomizedAdvice derandomize_advice(const RandomizedAdvice& advice, int n, double epsilon,
                                      RngStream& rng) {
    uint64_t k = derandomized_sample_count(n, epsilon);
    DerandomizedAdvice out;
    out.samples.reserve(size_t(k));
    for (uint64_t i = 0; i < k; i++) {
        RngStream sub = rng.substream(i);
        out.samples.push_back(advice.sample(epsilon / 2, sub));
        if (out.samples.back().size() != out.samples.front().size()) {
            throw std::logic_error("derandomize_advice: advice length varies at fixed epsilon");
        }
    }
    return out;
}

BitString pick_and_run(const DerandomizedAdvice& advice,
                       const std::function<BitString(const BitString& x, const BitString& w,
                                                     RngStream& rng)>& solver,
                       const BitString& x, RngStream& rng) {
    if (advice.samples.empty()) {
        throw std::invalid_argument("pick_and_run: empty advice list");
    }
    uint64_t i = rng.uniform_below(advice.samples.size());
    return solver(x, advice.samples[size_t(i)], rng);
}

double derandomization_union_bound_log(int n, uint64_t k, double epsilon) {
    return double(n) * std::log(2.0) - double(k) * epsilon * epsilon / 2.0;
}

AvoidSetInstance::AvoidSetInstance(int n, uint64_t seed) : n_(n), seed_(seed) {
    if (n < 2 || n > 24) {
        throw CapacityError("AvoidSetInstance: n must be in [2, 24]");
    }
}

std::vector<uint32_t> AvoidSetInstance::forbidden_set(const BitString& x) const {
    if (int(x.size()) != n_) {
        throw std::invalid_argument("AvoidSetInstance::forbidden_set: |x| != n");
    }
    uint64_t domain = uint64_t(1) << n_;
    uint64_t k = forbidden_count();
    RngStream rng = RngStream(seed_).substream(x.value());
    // Reservoir selection (Algorithm R) over the value stream 0..2^n-1 keeps
    // |S_x| exact rather than binomial.
    std::vector<uint32_t> reservoir;
    reservoir.resize(size_t(k));
    for (uint64_t v = 0; v < k; v++) {
        reservoir[size_t(v)] = uint32_t(v);
    }
    for (uint64_t v = k; v < domain; v++) {
        uint64_t j = rng.uniform_below(v + 1);
        if (j < k) {
            reservoir[size_t(j)] = uint32_t(v);
        }
    }
    std::sort(reservoir.begin(), reservoir.end());
    return reservoir;
}

bool AvoidSetInstance::contains(const BitString& x, const BitString& y) const {
    if (y.size() != x.size()) {
        throw std::invalid_argument("AvoidSetInstance::contains: |y| != |x|");
    }
    auto forbidden = forbidden_set(x);
    return std::binary_search(forbidden.begin(), forbidden.end(), uint32_t(y.value()));
}

bool avoid_relation_check(const AvoidSetInstance& inst, const BitString& x, const BitString& y) {
    return !inst.contains(x, y);
}

Relation avoid_relation(const AvoidSetInstance& inst) {
    Relation r;
    r.name = "avoid_set_n" + std::to_string(inst.n());
    r.input_bits = inst.n();
    r.output_bits = inst.n();
    r.check = [inst](const BitString& x, const BitString& y) {
        return int(y.size()) == inst.n() && avoid_relation_check(inst, x, y);
    };
    return r;
}

uint64_t distinct_distribution_count(const AdviceIndexedSampler& algorithm, int b, int n) {
    if (b < 0 || b > 12) {
        throw CapacityError("distinct_distribution_count: b over the enumeration guard (12)");
    }
    if (n < 1 || n > 4) {
        throw CapacityError("distinct_distribution_count: n over the enumeration guard (4)");
    }
    std::vector<FiniteDistribution> representatives;
    for (uint64_t a = 0; a < (uint64_t(1) << b); a++) {
        FiniteDistribution dist = algorithm(BitString::from_value(size_t(b), a));
        if (!dist.is_normalized(1e-9)) {
            throw std::invalid_argument("distinct_distribution_count: unnormalized distribution");
        }
        bool known = false;
        for (const auto& rep : representatives) {
            if (pointwise_max_diff(rep, dist) <= 1e-12) {
                known = true;
                break;
            }
        }
        if (!known) {
            representatives.push_back(std::move(dist));
        }
    }
    return representatives.size();
}

BitString sampbpp_rpoly_uniform_task(const std::vector<BitString>& S, RngStream& rng) {
    if (S.empty()) {
        throw std::invalid_argument("sampbpp_rpoly_uniform_task: S must be nonempty");
    }
    return S[size_t(rng.uniform_below(S.size()))];
}

}  // namespace advicelab
