#include "advicelab/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "advicelab/errors.hpp"

namespace advicelab {

namespace {

enum Opcode : int {
    kHalt = 0,
    kOut0 = 1,
    kOut1 = 2,
    kCopy = 3,
    kSkip = 4,
    kRepeat = 5,
    kJumpBack = 6,
    kNop = 7,
};

struct Decoded {
    int opcode = kHalt;
    int arg = 0;
    size_t end = 0;  // bit offset just past the instruction
    bool ok = false;
};

Decoded decode_at(const BitString& code, size_t pc) {
    Decoded d;
    if (pc + 3 > code.size()) {
        return d;
    }
    d.opcode = (int(code.bit(pc)) << 2) | (int(code.bit(pc + 1)) << 1) | int(code.bit(pc + 2));
    d.end = pc + 3;
    if (d.opcode == kRepeat || d.opcode == kJumpBack) {
        if (d.end + 4 > code.size()) {
            return d;
        }
        d.arg = (int(code.bit(d.end)) << 3) | (int(code.bit(d.end + 1)) << 2) |
                (int(code.bit(d.end + 2)) << 1) | int(code.bit(d.end + 3));
        d.end += 4;
    }
    d.ok = true;
    return d;
}

struct Machine {
    const BitString& input;
    size_t input_head = 0;
    BitString output;

    bool read_input() {
        bool bit = input_head < input.size() ? input.bit(input_head) : false;
        input_head++;
        return bit;
    }
};

}  // namespace

VmResult run_vm(const ToyProgram& program, const BitString& input, uint64_t step_limit) {
    if (step_limit < 1) {
        throw std::invalid_argument("run_vm: step_limit must be >= 1");
    }
    const BitString& code = program.code;
    Machine m{input, 0, BitString()};
    VmResult result;
    size_t pc = 0;
    bool discard_next = false;
    for (;;) {
        Decoded instr = decode_at(code, pc);
        if (!instr.ok) {
            break;  // code exhausted or truncated suffix
        }
        pc = instr.end;
        if (discard_next) {
            discard_next = false;
            continue;
        }
        if (instr.opcode == kRepeat) {
            Decoded body = decode_at(code, pc);
            if (result.steps + 1 > step_limit) {
                result.timed_out = true;
                break;
            }
            result.steps++;  // the REPEAT itself
            if (!body.ok) {
                break;
            }
            pc = body.end;
            bool halted = false;
            for (int rep = 0; rep < instr.arg; rep++) {
                if (result.steps + 1 > step_limit) {
                    result.timed_out = true;
                    halted = true;
                    break;
                }
                result.steps++;
                switch (body.opcode) {
                    case kHalt:
                        halted = true;
                        break;
                    case kOut0:
                        m.output.append(false);
                        break;
                    case kOut1:
                        m.output.append(true);
                        break;
                    case kCopy:
                        m.output.append(m.read_input());
                        break;
                    case kSkip:
                        if (m.read_input()) {
                            discard_next = true;
                        }
                        break;
                    default:
                        break;  // nested REPEAT / JUMPBACK / NOP are inert here
                }
                if (halted) {
                    break;
                }
            }
            if (halted) {
                break;
            }
            continue;
        }
        if (result.steps + 1 > step_limit) {
            result.timed_out = true;
            break;
        }
        result.steps++;
        bool halted = false;
        switch (instr.opcode) {
            case kHalt:
                halted = true;
                break;
            case kOut0:
                m.output.append(false);
                break;
            case kOut1:
                m.output.append(true);
                break;
            case kCopy:
                m.output.append(m.read_input());
                break;
            case kSkip:
                if (m.read_input()) {
                    discard_next = true;
                }
                break;
            case kJumpBack:
                pc = instr.end >= size_t(instr.arg) ? instr.end - size_t(instr.arg) : 0;
                break;
            case kNop:
                break;
            default:
                break;
        }
        if (halted) {
            break;
        }
    }
    result.output = m.output;
    return result;
}

namespace {

double kt_of(size_t program_len, uint64_t steps) {
    return double(program_len) + std::log2(double(std::max<uint64_t>(steps, 1)));
}

ToyProgram program_from(int len, uint64_t value) {
    return ToyProgram{BitString::from_value(size_t(len), value)};
}

KtValue kt_impl(const BitString& y, const BitString& input, int max_len, uint64_t max_steps) {
    if (max_len < 0 || max_len > 20) {
        throw CapacityError("kt: max_len over the enumeration guard (20)");
    }
    if (max_steps < 1) {
        throw std::invalid_argument("kt: max_steps must be >= 1");
    }
    KtValue best;
    for (int len = 0; len <= max_len; len++) {
        // kt >= |P|, so longer programs cannot improve a bound this small.
        if (best.finite() && double(len) >= best.value) {
            break;
        }
        // A candidate improves only if steps < 2^{best - len}.
        uint64_t cap = max_steps;
        if (best.finite()) {
            double budget = std::exp2(best.value - double(len));
            if (budget < double(max_steps)) {
                cap = uint64_t(budget);
            }
        }
        if (cap < 1) {
            break;
        }
        for (uint64_t v = 0; v < (uint64_t(1) << len); v++) {
            ToyProgram p = program_from(len, v);
            VmResult run = run_vm(p, input, cap);
            if (run.timed_out || !(run.output == y)) {
                continue;
            }
            double value = kt_of(p.length(), run.steps);
            if (!best.finite() || value < best.value) {
                best.value = value;
                best.witness = KtValue::Witness{p, run.steps};
            }
        }
    }
    return best;
}

}  // namespace

KtValue kt(const BitString& y, int max_len, uint64_t max_steps) {
    return kt_impl(y, BitString(), max_len, max_steps);
}

KtValue kt_cond(const BitString& y, const BitString& x, int max_len, uint64_t max_steps) {
    return kt_impl(y, x, max_len, max_steps);
}

std::vector<LowKtEntry> low_kt_census(int n, double threshold) {
    if (threshold > 10.0) {
        throw CapacityError("low_kt_census: threshold over the enumeration guard (10)");
    }
    std::map<BitString, LowKtEntry> found;
    if (threshold > 0) {
        int max_len = int(std::ceil(threshold)) - 1;
        for (int len = 0; len <= max_len; len++) {
            double budget = std::exp2(threshold - double(len));
            uint64_t cap = uint64_t(budget);
            if (cap < 1) {
                break;
            }
            for (uint64_t v = 0; v < (uint64_t(1) << len); v++) {
                ToyProgram p = program_from(len, v);
                VmResult run = run_vm(p, BitString(), cap);
                if (run.timed_out || int(run.output.size()) != n) {
                    continue;
                }
                double value = kt_of(p.length(), run.steps);
                if (value >= threshold) {
                    continue;
                }
                auto it = found.find(run.output);
                if (it == found.end() || value < it->second.kt_value) {
                    found[run.output] = LowKtEntry{run.output, value, p, run.steps};
                }
            }
        }
    }
    std::vector<LowKtEntry> out;
    out.reserve(found.size());
    for (auto& [_, entry] : found) {
        out.push_back(std::move(entry));
    }
    return out;
}

uint64_t count_low_kt(int n, double threshold) {
    return low_kt_census(n, threshold).size();
}

BitString fbpp_high_kt_solver(const BitString& x, double epsilon, RngStream& rng) {
    int n = int(x.size());
    if (n < 1) {
        throw std::invalid_argument("fbpp_high_kt_solver: empty input");
    }
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("fbpp_high_kt_solver: epsilon must be in (0,1]");
    }
    if (epsilon >= std::exp2(-double(n) / 2.0)) {
        return rng.random_bits(size_t(n));
    }
    if (n > 16) {
        throw CapacityError("fbpp_high_kt_solver: brute-force branch guarded at n <= 16");
    }
    int max_len = (n + 1) / 2;
    uint64_t max_steps = uint64_t(1) << n;
    double threshold = double(n) / 2.0;
    for (uint64_t yv = 0; yv < (uint64_t(1) << n); yv++) {
        BitString y = BitString::from_value(size_t(n), yv);
        KtValue value = kt(y, max_len, max_steps);
        if (value.value >= threshold) {
            return y;
        }
    }
    throw std::logic_error("fbpp_high_kt_solver: no high-kt string found (impossible by counting)");
}

Relation high_kt_relation(int n) {
    if (n > 16) {
        throw CapacityError("high_kt_relation: guarded at n <= 16");
    }
    Relation r;
    r.name = "high_kt_n" + std::to_string(n);
    r.input_bits = n;
    r.output_bits = n;
    int max_len = (n + 1) / 2;
    uint64_t max_steps = uint64_t(1) << n;
    r.check = [n, max_len, max_steps](const BitString& x, const BitString& y) {
        if (int(y.size()) != n || int(x.size()) != n) {
            return false;
        }
        return kt(y, max_len, max_steps).value >= double(n) / 2.0;
    };
    return r;
}

}  // namespace advicelab
