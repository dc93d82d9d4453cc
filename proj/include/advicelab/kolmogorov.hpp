#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "advicelab/bitstring.hpp"
#include "advicelab/relation.hpp"
#include "advicelab/rng.hpp"

namespace advicelab {

// ---------------------------------------------------------------------------
// Toy VM
//
// A program is an arbitrary bitstring; every bitstring decodes (malformed or
// truncated suffixes are inert). The machine has a program counter (a bit
// offset into the code), a read-once input head (reads past the end of the
// input yield 0), and an append-only output tape.
//
// Instructions are decoded MSB-first: a 3-bit opcode, then a 4-bit argument
// for REPEAT and JUMPBACK. If fewer bits remain than the instruction needs,
// execution halts with the output produced so far.
//
//   000  HALT        stop; the output tape is the result
//   001  OUT0        append 0 to the output tape
//   010  OUT1        append 1 to the output tape
//   011  COPY        append the next input bit to the output tape
//   100  SKIP        read the next input bit; if it is 1, the next decoded
//                    instruction is discarded instead of executed
//   101  REPEAT k    decode the following instruction once and execute it k
//                    times (k in 0..15; k = 0 discards it); a nested REPEAT
//                    or JUMPBACK under REPEAT acts as NOP, HALT halts, and a
//                    SKIP reads one input bit per execution, latching the
//                    discard flag if any bit is 1
//   110  JUMPBACK d  move the program counter back d bits (d in 0..15),
//                    counted from the end of this instruction and clamped at
//                    the start of the code
//   111  NOP         do nothing
//
// Every executed instruction costs one step; each of REPEAT's k executions
// costs one step in addition to the REPEAT itself. A discarded instruction
// costs nothing. Execution ends on HALT, on running past the end of the code,
// or when the step count would exceed the limit (Timeout, which is a value,
// not an error).
// ---------------------------------------------------------------------------

// The program P: any bitstring, |P| in bits.
struct ToyProgram {
    BitString code;

    size_t length() const { return code.size(); }
};

struct VmResult {
    BitString output;
    uint64_t steps = 0;
    bool timed_out = false;
};

VmResult run_vm(const ToyProgram& program, const BitString& input, uint64_t step_limit);

// |P| + log2(steps) for the witness when finite (steps counted as at least
// 1), +infinity when no producing program exists within the bounds.
struct KtValue {
    double value = std::numeric_limits<double>::infinity();

    struct Witness {
        ToyProgram program;
        uint64_t steps = 0;
    };
    std::optional<Witness> witness;

    bool finite() const { return witness.has_value(); }
};

// Minimum of |P| + log2(steps) over all programs of length <= max_len whose
// run on the empty input halts within max_steps with output exactly y.
// Programs are enumerated in length-then-value order, so ties resolve
// deterministically. Guarded at max_len <= 20.
KtValue kt(const BitString& y, int max_len, uint64_t max_steps);

// Same minimization with x on the input tape.
KtValue kt_cond(const BitString& y, const BitString& x, int max_len, uint64_t max_steps);

struct LowKtEntry {
    BitString y;
    double kt_value = 0;
    ToyProgram witness;
    uint64_t steps = 0;
};

// Every n-bit string with kt below the threshold, found by enumerating all
// programs shorter than the threshold (a witness of value < threshold must
// have |P| < threshold and steps < 2^{threshold - |P|}). Sorted by y.
// Guarded at threshold <= 10.
std::vector<LowKtEntry> low_kt_census(int n, double threshold);

// |{ y in {0,1}^n : kt(y) < threshold }|.
uint64_t count_low_kt(int n, double threshold);

// Finds an n-bit string of kt at least n/2. When epsilon >= 2^{-n/2} a
// uniformly random y works up to the (tiny) low-kt mass; otherwise a
// deterministic lexicographic scan returns the first y with kt(y) >= n/2.
// The scan's enumeration bounds (max_len = ceil(n/2), max_steps = 2^n) cover
// every possible witness below the threshold, so the bounded kt decides the
// threshold exactly. Brute-force branch guarded at n <= 16.
BitString fbpp_high_kt_solver(const BitString& x, double epsilon, RngStream& rng);

// The relation "output y with |y| = |x| and kt(y) >= |y|/2", decided by the
// same bounded enumeration the solver's scan uses.
Relation high_kt_relation(int n);

}  // namespace advicelab
