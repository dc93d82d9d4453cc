#pragma once

#include <cstdint>
#include <vector>

#include "advicelab/bitstring.hpp"
#include "advicelab/hidden_matching.hpp"
#include "advicelab/rng.hpp"

namespace advicelab {

// Exact probability as a reduced fraction; denominators here stay tiny
// (truth-table and subset counts at desk scale).
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    static Rational make(int64_t num, int64_t den);
    double to_double() const { return double(num) / double(den); }
    bool operator==(const Rational&) const = default;
};

// Classical advice revealing f on a subset T of inputs. members is sorted and
// distinct; values holds f at the corresponding member.
struct SubsetAdvice {
    int n = 0;
    std::vector<uint32_t> members;
    std::vector<uint8_t> values;

    bool contains(uint32_t v) const;
    bool value_of(uint32_t v) const;
};

SubsetAdvice make_subset_advice(const FunctionFamily& f, std::vector<uint32_t> members);
// Uniform k-subset of [0, domain) via Floyd's sampling; sorted.
std::vector<uint32_t> random_k_subset(uint64_t domain, uint64_t k, RngStream& rng);
SubsetAdvice random_subset_advice(const FunctionFamily& f, uint64_t k, RngStream& rng);

// Advice serialization for the derandomization harness: k records of n+1
// bits (member value, then f(member)), members ascending.
BitString encode_subset_advice(const SubsetAdvice& advice);
SubsetAdvice decode_subset_advice(int n, const BitString& encoded);

// If some matching pair {y, y^x} has both endpoints revealed, answers with
// the first such y in value order and the known parity; otherwise answers
// (0^n, uniform random b). Requires x != 0^n.
HMOutput subset_advice_strategy(const SubsetAdvice& advice, const BitString& x, RngStream& rng);

// Probability that a uniform k-subset of {0,1}^n contains both endpoints of
// at least one of the 2^{n-1} disjoint pairs {y, y^x}; independent of the
// (nonzero) x. Computed as 1 - prod_{i<k} 2(m-i)/(2m-i) with m = 2^{n-1}.
double hit_probability(int n, uint64_t k, const BitString& x);
double hit_probability(int n, uint64_t k);
// Same quantity as an exact fraction; guarded at n <= 4 (int64 products).
Rational hit_probability_exact(int n, uint64_t k);
// Success of the subset strategy under a uniform truth table: hit + (1-hit)/2.
double subset_success_probability(int n, uint64_t k);

// One-way protocol with t advice bits, represented explicitly: a message per
// truth table (tables indexed by their packed value, f(0) in the least
// significant bit) and a decoded answer per (message, x).
struct DeterministicProtocol {
    int n = 0;
    int advice_bits = 0;
    std::vector<uint8_t> message_of;         // size 2^{2^n}
    std::vector<std::vector<HMOutput>> decoder;  // [message][x-1], x = 1..2^n-1
};

FunctionFamily family_from_index(int n, uint64_t table_index);

// Exact average success over all truth tables and all nonzero x (uniform
// f, uniform x != 0^n). Guarded at n <= 3.
Rational success_under_mu(const DeterministicProtocol& protocol);

struct BruteForceResult {
    DeterministicProtocol protocol;
    Rational success;
};

// Exact optimum over all message functions with t advice bits, with the
// decoder chosen as the best response (preimage counting) for each message
// function. Ties are broken by lexicographic order of the message-function
// encoding (message of table 0 first). When t >= 2^n the full truth table
// fits in the message and the identity protocol is returned directly; the
// searched range is guarded at n <= 2, t <= 2.
BruteForceResult brute_force_optimal(int n, int t);

}  // namespace advicelab
