#include "advicelab/prefix_search.hpp"

#include <cmath>
#include <stdexcept>

namespace advicelab {

namespace {

void check_query(const BitString& z, int output_bits) {
    if (int(z.size()) >= output_bits) {
        throw std::invalid_argument("prefix oracle: |z| must be below the output length");
    }
}

}  // namespace

double prefix_search_epsilon(int output_bits) {
    return std::exp2(-2.0 * double(output_bits));
}

bool prefix_oracle(const Solver& solver, const BitString& x, const BitString& z, int output_bits,
                   const PrefixOracleConfig& config, RngStream& rng, PrefixQueryTrace* trace) {
    check_query(z, output_bits);
    if (config.samples_per_query < 1) {
        throw std::invalid_argument("prefix_oracle: samples_per_query must be >= 1");
    }
    double epsilon = prefix_search_epsilon(output_bits);
    BitString z1 = z;
    z1.append(true);
    uint64_t with_prefix = 0;
    for (uint64_t i = 0; i < config.samples_per_query; i++) {
        RngStream sub = rng.substream(i);
        BitString y = solver.solve(x, epsilon, sub);
        if (int(y.size()) != output_bits) {
            throw std::logic_error("prefix_oracle: solver output is not the fixed length");
        }
        if (y.has_prefix(z1)) {
            with_prefix++;
        }
    }
    double fraction = double(with_prefix) / double(config.samples_per_query);
    double threshold = config.threshold_factor * std::pow(3.0, -double(z.size()));
    bool yes = fraction > threshold;
    if (trace != nullptr) {
        trace->z = z;
        trace->fraction = fraction;
        trace->answer = yes;
        trace->failure_bound =
            2.0 * std::exp(-double(config.samples_per_query) * std::pow(9.0, -double(z.size())) / 18.0);
    }
    return yes;
}

bool prefix_oracle_exact(const EnumerableSolver& solver, const BitString& x, const BitString& z,
                         int output_bits, double threshold_factor, PrefixQueryTrace* trace) {
    check_query(z, output_bits);
    FiniteDistribution dist = solver.distribution(x, prefix_search_epsilon(output_bits));
    BitString z1 = z;
    z1.append(true);
    double mass = dist.prefix_mass(z1);
    double threshold = threshold_factor * std::pow(3.0, -double(z.size()));
    bool yes = mass > threshold;
    if (trace != nullptr) {
        trace->z = z;
        trace->fraction = mass;
        trace->answer = yes;
        trace->failure_bound = 0;
    }
    return yes;
}

namespace {

template <typename OracleFn>
BitString search_loop(int output_bits, std::vector<PrefixQueryTrace>* trace, OracleFn&& oracle) {
    if (output_bits < 1) {
        throw std::invalid_argument("prefix_search: output length must be >= 1");
    }
    BitString z;
    for (int step = 1; step <= output_bits; step++) {
        PrefixQueryTrace query;
        bool yes = oracle(z, &query);
        query.step = step;
        if (trace != nullptr) {
            trace->push_back(query);
        }
        z.append(yes);
    }
    return z;
}

}  // namespace

BitString prefix_search(const Solver& solver, const BitString& x, int output_bits,
                        const PrefixOracleConfig& config, RngStream& rng,
                        std::vector<PrefixQueryTrace>* trace) {
    int step = 0;
    return search_loop(output_bits, trace, [&](const BitString& z, PrefixQueryTrace* q) {
        RngStream query_rng = rng.substream(uint64_t(step++));
        return prefix_oracle(solver, x, z, output_bits, config, query_rng, q);
    });
}

BitString prefix_search_exact(const EnumerableSolver& solver, const BitString& x, int output_bits,
                              double threshold_factor, std::vector<PrefixQueryTrace>* trace) {
    return search_loop(output_bits, trace, [&](const BitString& z, PrefixQueryTrace* q) {
        return prefix_oracle_exact(solver, x, z, output_bits, threshold_factor, q);
    });
}

}  // namespace advicelab
