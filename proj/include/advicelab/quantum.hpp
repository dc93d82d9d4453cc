#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advicelab/distribution.hpp"
#include "advicelab/hidden_matching.hpp"
#include "advicelab/relation.hpp"
#include "advicelab/rng.hpp"

namespace advicelab {

// Full 2^n amplitude vector. Basis index is the integer value of the bit
// string with qubit 1 as the most significant bit, matching BitString value
// order. The advice state depends only on the function table; the protocol
// built on it is exact, so there is no per-error-level variant.
struct StateVector {
    static constexpr int kMaxQubits = 24;

    int n = 0;
    std::vector<std::complex<double>> amps;

    double norm_sq() const;
};

struct Gate {
    enum class Kind { kCnot, kH };
    Kind kind;
    int a = 0;  // CNOT control, or the H qubit
    int b = 0;  // CNOT target
};

// Gate list with an implied terminal measurement of every qubit. Qubit
// indices are 1-based; CNOT control != target.
struct Circuit {
    int n = 0;
    std::vector<Gate> gates;

    // One gate per line: "CNOT c t" / "H q", then "MEASURE ALL".
    std::string text() const;
};

// Depolarizing probability applied once to the advice state (no gate or
// measurement noise).
struct NoiseSpec {
    double lambda = 0.0;
};

// amps[value(y)] = (-1)^{f(y)} / sqrt(2^n): the uniform-magnitude phase state
// the measurement protocol consumes.
StateVector prepare_advice_state(const FunctionFamily& f);

// Position (1-based, leftmost = 1) of the last set bit of x; the qubit that
// carries the parity bit after the measurement circuit. Requires x != 0^n.
int pivot_position(const BitString& x);

// The measurement circuit for matching index x: CNOT(pivot -> j) for every
// other set position j in increasing order, then H(pivot). Requires x != 0^n.
Circuit build_measurement_circuit(const BitString& x);

void apply_gate(StateVector& state, const Gate& gate);
void apply_circuit(StateVector& state, const Circuit& circuit);

// Draws a basis outcome from |amps|^2 by a CDF walk in index order.
uint64_t sample_outcome(const StateVector& state, RngStream& rng);

// Interprets a measured basis index: y is z with the pivot bit cleared, b is
// the pivot bit.
HMOutput decode_outcome(int n, int pivot, uint64_t z);

// One full protocol run: prepare the advice state, apply the measurement
// circuit for x, sample an outcome, decode. With probability noise.lambda the
// measured outcome is replaced by a uniform n-bit string, which is exactly
// the state-level depolarizing channel since the circuit is unitary followed
// by a full measurement. x = 0^n short-circuits to (0^n, 0).
HMOutput run_protocol(const FunctionFamily& f, const BitString& x, const NoiseSpec& noise,
                      RngStream& rng);

// Equivalent sampler that skips the statevector: y uniform over the 2^{n-1}
// strings with pivot bit 0, b = f(y) ^ f(y^x). Requires x != 0^n.
HMOutput analytic_sample(const FunctionFamily& f, const BitString& x, RngStream& rng);

// Exact output distribution over encoded HMOutputs obtained by applying the
// circuit to the advice state and decoding every basis outcome. Guarded at
// n <= 10. Requires x != 0^n.
FiniteDistribution output_distribution(const FunctionFamily& f, const BitString& x);

// Exact distribution of analytic_sample: uniform over (y, f(y)^f(y^x)) with
// pivot bit of y clear.
FiniteDistribution analytic_distribution(const FunctionFamily& f, const BitString& x);

// Exact distribution of run_protocol under depolarizing noise; handles
// x = 0^n as the fixed (0^n, 0) point mass. Guarded at n <= 10.
FiniteDistribution noisy_output_distribution(const FunctionFamily& f, const BitString& x,
                                             double lambda);

// Solver / enumerable-solver views of the protocol for the measurement
// harness.
Solver hm_quantum_solver(const FunctionFamily& f, const NoiseSpec& noise);
EnumerableSolver hm_quantum_enumerable(const FunctionFamily& f, const NoiseSpec& noise);

struct PostselectResult {
    bool bit = false;
    uint64_t attempts = 0;
};

// Measures the state sum_z |z>|L(z)> / sqrt(2^n) repeatedly until the first
// register reads x, then reports the second register (rejection sampling with
// expected 2^n repetitions). Returns nullopt if the 2^{n+7} iteration cap is
// hit (probability < 1e-30). Guarded at n <= 20.
std::optional<PostselectResult> postselect_demo(const FunctionFamily& L, const BitString& x,
                                                RngStream& rng);

}  // namespace advicelab
