#include "advicelab/quantum.hpp"

#include <cmath>
#include <stdexcept>

#include "advicelab/errors.hpp"

namespace advicelab {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

void require_nonzero(const BitString& x, const char* who) {
    if (!x.any()) {
        throw std::invalid_argument(std::string(who) + ": x = 0^n rejected");
    }
}

// Bit position of qubit q (1-based) inside a basis index.
inline int index_bit(int n, int qubit) {
    return n - qubit;
}

}  // namespace

double StateVector::norm_sq() const {
    double total = 0;
    for (const auto& a : amps) {
        total += std::norm(a);
    }
    return total;
}

std::string Circuit::text() const {
    std::string out;
    for (const auto& g : gates) {
        if (g.kind == Gate::Kind::kCnot) {
            out += "CNOT " + std::to_string(g.a) + " " + std::to_string(g.b) + "\n";
        } else {
            out += "H " + std::to_string(g.a) + "\n";
        }
    }
    out += "MEASURE ALL\n";
    return out;
}

StateVector prepare_advice_state(const FunctionFamily& f) {
    if (f.n() > StateVector::kMaxQubits) {
        throw CapacityError("prepare_advice_state: n over the qubit guard");
    }
    StateVector state;
    state.n = f.n();
    uint64_t dim = f.domain_size();
    double mag = 1.0 / std::sqrt(double(dim));
    state.amps.resize(dim);
    for (uint64_t y = 0; y < dim; y++) {
        state.amps[y] = f.eval(y) ? -mag : mag;
    }
    return state;
}

int pivot_position(const BitString& x) {
    require_nonzero(x, "pivot_position");
    for (size_t i = x.size(); i-- > 0;) {
        if (x.bit(i)) {
            return int(i) + 1;
        }
    }
    return 0;  // unreachable
}

Circuit build_measurement_circuit(const BitString& x) {
    require_nonzero(x, "build_measurement_circuit");
    Circuit circuit;
    circuit.n = int(x.size());
    int pivot = pivot_position(x);
    for (size_t i = 0; i < x.size(); i++) {
        int pos = int(i) + 1;
        if (x.bit(i) && pos != pivot) {
            circuit.gates.push_back({Gate::Kind::kCnot, pivot, pos});
        }
    }
    circuit.gates.push_back({Gate::Kind::kH, pivot, 0});
    return circuit;
}

void apply_gate(StateVector& state, const Gate& gate) {
    const uint64_t dim = uint64_t(1) << state.n;
    if (gate.kind == Gate::Kind::kCnot) {
        if (gate.a == gate.b || gate.a < 1 || gate.b < 1 || gate.a > state.n || gate.b > state.n) {
            throw std::invalid_argument("apply_gate: bad CNOT qubits");
        }
        const uint64_t control = uint64_t(1) << index_bit(state.n, gate.a);
        const uint64_t target = uint64_t(1) << index_bit(state.n, gate.b);
        for (uint64_t z = 0; z < dim; z++) {
            if ((z & control) && !(z & target)) {
                std::swap(state.amps[z], state.amps[z | target]);
            }
        }
    } else {
        if (gate.a < 1 || gate.a > state.n) {
            throw std::invalid_argument("apply_gate: bad H qubit");
        }
        const uint64_t mask = uint64_t(1) << index_bit(state.n, gate.a);
        for (uint64_t z = 0; z < dim; z++) {
            if (!(z & mask)) {
                auto lo = state.amps[z];
                auto hi = state.amps[z | mask];
                state.amps[z] = (lo + hi) * kSqrtHalf;
                state.amps[z | mask] = (lo - hi) * kSqrtHalf;
            }
        }
    }
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
    if (circuit.n != state.n) {
        throw std::invalid_argument("apply_circuit: qubit count mismatch");
    }
    for (const auto& gate : circuit.gates) {
        apply_gate(state, gate);
    }
}

uint64_t sample_outcome(const StateVector& state, RngStream& rng) {
    double u = rng.uniform();
    double cumulative = 0;
    uint64_t dim = uint64_t(1) << state.n;
    for (uint64_t z = 0; z < dim; z++) {
        cumulative += std::norm(state.amps[z]);
        if (u < cumulative) {
            return z;
        }
    }
    return dim - 1;
}

HMOutput decode_outcome(int n, int pivot, uint64_t z) {
    uint64_t pivot_mask = uint64_t(1) << index_bit(n, pivot);
    HMOutput out;
    out.b = (z & pivot_mask) != 0;
    out.y = BitString::from_value(size_t(n), z & ~pivot_mask);
    return out;
}

HMOutput run_protocol(const FunctionFamily& f, const BitString& x, const NoiseSpec& noise,
                      RngStream& rng) {
    if (int(x.size()) != f.n()) {
        throw std::invalid_argument("run_protocol: |x| != n");
    }
    if (noise.lambda < 0.0 || noise.lambda > 1.0) {
        throw std::invalid_argument("run_protocol: lambda must be in [0,1]");
    }
    if (!x.any()) {
        return HMOutput{BitString::zeros(x.size()), false};
    }
    int pivot = pivot_position(x);
    bool depolarized = rng.bernoulli(noise.lambda);
    uint64_t z;
    if (depolarized) {
        z = rng.uniform_below(uint64_t(1) << f.n());
    } else {
        StateVector state = prepare_advice_state(f);
        apply_circuit(state, build_measurement_circuit(x));
        z = sample_outcome(state, rng);
    }
    return decode_outcome(f.n(), pivot, z);
}

HMOutput analytic_sample(const FunctionFamily& f, const BitString& x, RngStream& rng) {
    require_nonzero(x, "analytic_sample");
    int n = f.n();
    int pb = index_bit(n, pivot_position(x));
    uint64_t r = rng.uniform_below(uint64_t(1) << (n - 1));
    uint64_t low = r & ((uint64_t(1) << pb) - 1);
    uint64_t y = ((r >> pb) << (pb + 1)) | low;
    uint64_t yx = y ^ x.value();
    HMOutput out;
    out.y = BitString::from_value(size_t(n), y);
    out.b = f.eval(y) != f.eval(yx);
    return out;
}

FiniteDistribution output_distribution(const FunctionFamily& f, const BitString& x) {
    if (f.n() > 10) {
        throw CapacityError("output_distribution: n over the enumeration guard (10)");
    }
    require_nonzero(x, "output_distribution");
    if (int(x.size()) != f.n()) {
        throw std::invalid_argument("output_distribution: |x| != n");
    }
    int pivot = pivot_position(x);
    StateVector state = prepare_advice_state(f);
    apply_circuit(state, build_measurement_circuit(x));
    FiniteDistribution dist;
    uint64_t dim = f.domain_size();
    for (uint64_t z = 0; z < dim; z++) {
        double p = std::norm(state.amps[z]);
        if (p > 0) {
            dist.add(decode_outcome(f.n(), pivot, z).encode(), p);
        }
    }
    dist.prune(1e-12);
    return dist;
}

FiniteDistribution analytic_distribution(const FunctionFamily& f, const BitString& x) {
    require_nonzero(x, "analytic_distribution");
    int n = f.n();
    int pb = index_bit(n, pivot_position(x));
    uint64_t pivot_mask = uint64_t(1) << pb;
    uint64_t xv = x.value();
    FiniteDistribution dist;
    double p = 1.0 / double(uint64_t(1) << (n - 1));
    for (uint64_t y = 0; y < f.domain_size(); y++) {
        if (y & pivot_mask) {
            continue;
        }
        HMOutput out;
        out.y = BitString::from_value(size_t(n), y);
        out.b = f.eval(y) != f.eval(y ^ xv);
        dist.add(out.encode(), p);
    }
    return dist;
}

FiniteDistribution noisy_output_distribution(const FunctionFamily& f, const BitString& x,
                                             double lambda) {
    if (lambda < 0.0 || lambda > 1.0) {
        throw std::invalid_argument("noisy_output_distribution: lambda must be in [0,1]");
    }
    if (!x.any()) {
        return FiniteDistribution::point_mass(
            HMOutput{BitString::zeros(x.size()), false}.encode());
    }
    FiniteDistribution dist;
    if (lambda < 1.0) {
        FiniteDistribution pure = output_distribution(f, x);
        for (const auto& [out, p] : pure.support()) {
            dist.add(out, (1 - lambda) * p);
        }
    }
    if (lambda > 0.0) {
        // A uniform measured outcome decodes to a uniform pivot-clear y with a
        // uniform bit.
        int pivot = pivot_position(x);
        uint64_t dim = f.domain_size();
        double p = lambda / double(dim);
        for (uint64_t z = 0; z < dim; z++) {
            dist.add(decode_outcome(f.n(), pivot, z).encode(), p);
        }
    }
    return dist;
}

Solver hm_quantum_solver(const FunctionFamily& f, const NoiseSpec& noise) {
    Solver s;
    s.resource_note = "statevector protocol, n=" + std::to_string(f.n()) +
                      ", lambda=" + std::to_string(noise.lambda);
    s.solve = [f, noise](const BitString& x, double, RngStream& rng) {
        return run_protocol(f, x, noise, rng).encode();
    };
    return s;
}

EnumerableSolver hm_quantum_enumerable(const FunctionFamily& f, const NoiseSpec& noise) {
    EnumerableSolver s;
    s.resource_note = "exact protocol distribution, n=" + std::to_string(f.n());
    s.distribution = [f, noise](const BitString& x, double) {
        return noisy_output_distribution(f, x, noise.lambda);
    };
    return s;
}

std::optional<PostselectResult> postselect_demo(const FunctionFamily& L, const BitString& x,
                                                RngStream& rng) {
    int n = L.n();
    if (n > 20) {
        throw CapacityError("postselect_demo: n over the iteration guard (20)");
    }
    if (int(x.size()) != n) {
        throw std::invalid_argument("postselect_demo: |x| != n");
    }
    uint64_t target = x.value();
    uint64_t dim = L.domain_size();
    uint64_t cap = dim << 7;
    for (uint64_t attempt = 1; attempt <= cap; attempt++) {
        // Measuring sum_z |z>|L(z)> in the computational basis: the first
        // register is uniform and the second is determined by it.
        uint64_t z = rng.uniform_below(dim);
        if (z == target) {
            return PostselectResult{L.eval(z), attempt};
        }
    }
    return std::nullopt;
}

}  // namespace advicelab
