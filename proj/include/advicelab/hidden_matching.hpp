#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "advicelab/bitstring.hpp"
#include "advicelab/relation.hpp"
#include "advicelab/rng.hpp"

namespace advicelab {

// Bit-packed truth table of a Boolean function f : {0,1}^n -> {0,1}. The bit
// for input y lives at table position value(y) (leftmost written bit of y
// most significant). Immutable after construction; safe for concurrent reads.
class FunctionFamily {
   public:
    // Memory guard: a 2 MiB table at n = 24.
    static constexpr int kMaxBits = 24;

    FunctionFamily(int n, uint64_t seed, std::vector<uint64_t> table);

    // Deterministic expansion of a uniformly random truth table from (seed,
    // n); the same pair always reproduces the identical table.
    static FunctionFamily random(uint64_t seed, int n);
    // Table filled from an explicit predicate (tests, constant functions).
    static FunctionFamily from_predicate(int n, const std::function<bool(uint64_t)>& f);

    int n() const { return n_; }
    uint64_t seed() const { return seed_; }
    uint64_t domain_size() const { return uint64_t(1) << n_; }
    bool eval(uint64_t y_value) const { return (table_[y_value >> 6] >> (y_value & 63)) & 1; }
    bool eval(const BitString& y) const { return eval(y.value()); }
    const std::vector<uint64_t>& table() const { return table_; }

    bool operator==(const FunctionFamily& other) const {
        return n_ == other.n_ && table_ == other.table_;
    }

    // "HM1:n=<n>:<hex>" with hex digit j holding f at inputs 4j..4j+3, f(4j)
    // in the digit's most significant bit; used for regression pinning.
    std::string serialize() const;
    static FunctionFamily parse(const std::string& text);

   private:
    int n_;
    uint64_t seed_;
    std::vector<uint64_t> table_;
};

// A candidate answer for the hidden matching relation: an n-bit string y and
// the claimed parity bit b.
struct HMOutput {
    BitString y;
    bool b = false;

    bool operator==(const HMOutput&) const = default;

    // Fixed-length relation encoding: y followed by b (n + 1 bits).
    BitString encode() const { return y.concat(BitString::from_value(1, b)); }
    static HMOutput decode(const BitString& encoded);
};

// true iff f(y) XOR f(y^x) == b. For x = 0^n this reduces to b == 0.
bool rf_check(const FunctionFamily& f, const BitString& x, const HMOutput& out);

// The fixed-f hidden matching relation over (x, encoded HMOutput).
Relation hm_relation(const FunctionFamily& f);

// The perfect matching M_x = { {y, y^x} } on {0,1}^n, as pairs of integer
// vertex values with the smaller endpoint first, sorted by smaller endpoint.
// Rejects x = 0^n (no matching).
std::vector<std::pair<uint64_t, uint64_t>> matching_edges(const BitString& x);

// One draw from the hard input distribution: a uniform truth table and a
// uniform nonzero matching index x.
std::pair<FunctionFamily, BitString> sample_instance_mu(int n, RngStream& rng);

}  // namespace advicelab
