#include "advicelab/classical_adversary.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "advicelab/errors.hpp"

namespace advicelab {

Rational Rational::make(int64_t num, int64_t den) {
    if (den == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

bool SubsetAdvice::contains(uint32_t v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

bool SubsetAdvice::value_of(uint32_t v) const {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) {
        throw std::invalid_argument("SubsetAdvice::value_of: not a member");
    }
    return values[size_t(it - members.begin())] != 0;
}

SubsetAdvice make_subset_advice(const FunctionFamily& f, std::vector<uint32_t> members) {
    std::sort(members.begin(), members.end());
    SubsetAdvice advice;
    advice.n = f.n();
    advice.values.reserve(members.size());
    for (uint32_t m : members) {
        advice.values.push_back(f.eval(m) ? 1 : 0);
    }
    advice.members = std::move(members);
    return advice;
}

std::vector<uint32_t> random_k_subset(uint64_t domain, uint64_t k, RngStream& rng) {
    if (k > domain) {
        throw std::invalid_argument("random_k_subset: k over domain size");
    }
    std::unordered_set<uint64_t> chosen;
    chosen.reserve(size_t(k) * 2);
    for (uint64_t j = domain - k; j < domain; j++) {
        uint64_t t = rng.uniform_below(j + 1);
        if (!chosen.insert(t).second) {
            chosen.insert(j);
        }
    }
    std::vector<uint32_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

SubsetAdvice random_subset_advice(const FunctionFamily& f, uint64_t k, RngStream& rng) {
    return make_subset_advice(f, random_k_subset(f.domain_size(), k, rng));
}

BitString encode_subset_advice(const SubsetAdvice& advice) {
    BitString out;
    for (size_t i = 0; i < advice.members.size(); i++) {
        out = out.concat(BitString::from_value(size_t(advice.n), advice.members[i]));
        out.append(advice.values[i] != 0);
    }
    return out;
}

SubsetAdvice decode_subset_advice(int n, const BitString& encoded) {
    if (encoded.size() % size_t(n + 1) != 0) {
        throw std::invalid_argument("decode_subset_advice: length not a multiple of n+1");
    }
    SubsetAdvice advice;
    advice.n = n;
    size_t records = encoded.size() / size_t(n + 1);
    for (size_t r = 0; r < records; r++) {
        uint64_t v = 0;
        for (int j = 0; j < n; j++) {
            v = (v << 1) | uint64_t(encoded.bit(r * size_t(n + 1) + size_t(j)));
        }
        advice.members.push_back(uint32_t(v));
        advice.values.push_back(encoded.bit(r * size_t(n + 1) + size_t(n)) ? 1 : 0);
    }
    return advice;
}

HMOutput subset_advice_strategy(const SubsetAdvice& advice, const BitString& x, RngStream& rng) {
    if (!x.any()) {
        throw std::invalid_argument("subset_advice_strategy: x = 0^n rejected");
    }
    uint32_t xv = uint32_t(x.value());
    for (size_t i = 0; i < advice.members.size(); i++) {
        uint32_t y = advice.members[i];
        uint32_t partner = y ^ xv;
        if (advice.contains(partner)) {
            HMOutput out;
            out.y = BitString::from_value(x.size(), y);
            out.b = (advice.values[i] != 0) != advice.value_of(partner);
            return out;
        }
    }
    HMOutput out;
    out.y = BitString::zeros(x.size());
    out.b = rng.bernoulli(0.5);
    return out;
}

double hit_probability(int n, uint64_t k) {
    uint64_t pairs = uint64_t(1) << (n - 1);
    if (k > 2 * pairs) {
        throw std::invalid_argument("hit_probability: k over domain size");
    }
    if (k <= 1) {
        return 0.0;
    }
    if (k > pairs) {
        return 1.0;
    }
    double miss = 1.0;
    for (uint64_t i = 0; i < k; i++) {
        miss *= double(2 * (pairs - i)) / double(2 * pairs - i);
    }
    return 1.0 - miss;
}

double hit_probability(int n, uint64_t k, const BitString& x) {
    if (!x.any() || int(x.size()) != n) {
        throw std::invalid_argument("hit_probability: x must be a nonzero n-bit string");
    }
    return hit_probability(n, k);
}

Rational hit_probability_exact(int n, uint64_t k) {
    if (n > 4) {
        throw CapacityError("hit_probability_exact: n over the int64 product guard (4)");
    }
    uint64_t pairs = uint64_t(1) << (n - 1);
    if (k > 2 * pairs) {
        throw std::invalid_argument("hit_probability_exact: k over domain size");
    }
    if (k <= 1) {
        return Rational{0, 1};
    }
    if (k > pairs) {
        return Rational{1, 1};
    }
    int64_t num = 1;
    int64_t den = 1;
    for (uint64_t i = 0; i < k; i++) {
        num *= int64_t(2 * (pairs - i));
        den *= int64_t(2 * pairs - i);
        int64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    return Rational::make(den - num, den);
}

double subset_success_probability(int n, uint64_t k) {
    double hit = hit_probability(n, k);
    return hit + (1.0 - hit) / 2.0;
}

FunctionFamily family_from_index(int n, uint64_t table_index) {
    if (n > 6) {
        throw CapacityError("family_from_index: table index must fit in 64 bits (n <= 6)");
    }
    return FunctionFamily::from_predicate(n, [table_index](uint64_t y) {
        return (table_index >> y) & 1;
    });
}

namespace {

// Candidate answers for one x: every y with the pivot bit clear, each with
// both parity bits, in (y, b) order.
std::vector<HMOutput> candidate_answers(int n, uint64_t xv) {
    BitString x = BitString::from_value(size_t(n), xv);
    int pivot_bit = 0;
    for (int i = 0; i < n; i++) {
        if (xv & (uint64_t(1) << i)) {
            pivot_bit = i;
            break;
        }
    }
    // pivot position is the lowest set index-bit = highest 1-based position.
    std::vector<HMOutput> out;
    uint64_t pivot_mask = uint64_t(1) << pivot_bit;
    for (uint64_t y = 0; y < (uint64_t(1) << n); y++) {
        if (y & pivot_mask) {
            continue;
        }
        for (int b = 0; b <= 1; b++) {
            out.push_back(HMOutput{BitString::from_value(size_t(n), y), b != 0});
        }
    }
    (void)x;
    return out;
}

bool answer_correct(int n, uint64_t table_index, uint64_t xv, const HMOutput& ans) {
    uint64_t y = ans.y.value();
    uint64_t partner = y ^ xv;
    bool fy = (table_index >> y) & 1;
    bool fp = (table_index >> partner) & 1;
    (void)n;
    return (fy != fp) == ans.b;
}

std::vector<std::vector<HMOutput>> best_response_decoder(
    int n, const std::vector<uint8_t>& message_of, int messages) {
    uint64_t tables = uint64_t(1) << (uint64_t(1) << n);
    uint64_t x_count = (uint64_t(1) << n) - 1;
    std::vector<std::vector<HMOutput>> decoder;
    decoder.resize(size_t(messages));
    for (int msg = 0; msg < messages; msg++) {
        decoder[size_t(msg)].resize(size_t(x_count));
        for (uint64_t xv = 1; xv <= x_count; xv++) {
            auto candidates = candidate_answers(n, xv);
            int best_count = -1;
            HMOutput best = candidates.front();
            for (const auto& cand : candidates) {
                int count = 0;
                for (uint64_t t = 0; t < tables; t++) {
                    if (message_of[size_t(t)] == msg && answer_correct(n, t, xv, cand)) {
                        count++;
                    }
                }
                if (count > best_count) {
                    best_count = count;
                    best = cand;
                }
            }
            decoder[size_t(msg)][size_t(xv - 1)] = best;
        }
    }
    return decoder;
}

// Partition-value machinery for the message-function search. score[mask] is
// the total (over x) best-response hit count when exactly the tables in
// `mask` share a message.
std::vector<int> bucket_scores(int n) {
    int table_bits = 1 << n;
    uint32_t tables = uint32_t(1) << table_bits;
    uint64_t x_count = (uint64_t(1) << n) - 1;

    // indicator[x][cand]: bitmask over tables consistent with the candidate.
    std::vector<std::vector<uint32_t>> indicator(x_count);
    for (uint64_t xv = 1; xv <= x_count; xv++) {
        auto candidates = candidate_answers(n, xv);
        auto& masks = indicator[xv - 1];
        masks.resize(candidates.size(), 0);
        for (uint32_t t = 0; t < tables; t++) {
            for (size_t c = 0; c < candidates.size(); c++) {
                if (answer_correct(n, t, xv, candidates[c])) {
                    masks[c] |= uint32_t(1) << t;
                }
            }
        }
    }

    std::vector<int> score(tables == 0 ? 0 : (size_t(1) << tables), 0);
    for (uint64_t mask = 0; mask < (uint64_t(1) << tables); mask++) {
        int total = 0;
        for (uint64_t xv = 1; xv <= x_count; xv++) {
            int best = 0;
            for (uint32_t ind : indicator[xv - 1]) {
                best = std::max(best, std::popcount(uint32_t(mask) & ind));
            }
            total += best;
        }
        score[mask] = total;
    }
    return score;
}

// Best achievable total score when the remaining tables in `rem` are split
// among the given (possibly part-filled) labeled buckets.
int best_completion(const std::vector<uint32_t>& buckets, uint32_t rem,
                    const std::vector<int>& score, std::vector<int>& level,
                    std::vector<int>& next) {
    for (uint32_t s = rem;; s = (s - 1) & rem) {
        level[s] = score[buckets[0] | s];
        if (s == 0) {
            break;
        }
    }
    for (size_t d = 1; d < buckets.size(); d++) {
        for (uint32_t s = rem;; s = (s - 1) & rem) {
            int best = 0;
            for (uint32_t q = s;; q = (q - 1) & s) {
                best = std::max(best, level[s & ~q] + score[buckets[d] | q]);
                if (q == 0) {
                    break;
                }
            }
            next[s] = best;
            if (s == 0) {
                break;
            }
        }
        std::swap(level, next);
    }
    return level[rem];
}

}  // namespace

Rational success_under_mu(const DeterministicProtocol& protocol) {
    int n = protocol.n;
    if (n > 3) {
        throw CapacityError("success_under_mu: n over the truth-table enumeration guard (3)");
    }
    uint64_t tables = uint64_t(1) << (uint64_t(1) << n);
    uint64_t x_count = (uint64_t(1) << n) - 1;
    if (protocol.message_of.size() != tables) {
        throw std::invalid_argument("success_under_mu: message table has the wrong size");
    }
    int64_t correct = 0;
    for (uint64_t t = 0; t < tables; t++) {
        int msg = protocol.message_of[size_t(t)];
        for (uint64_t xv = 1; xv <= x_count; xv++) {
            const HMOutput& ans = protocol.decoder[size_t(msg)][size_t(xv - 1)];
            if (answer_correct(n, t, xv, ans)) {
                correct++;
            }
        }
    }
    return Rational::make(correct, int64_t(tables * x_count));
}

BruteForceResult brute_force_optimal(int n, int t) {
    if (n < 1 || t < 0) {
        throw std::invalid_argument("brute_force_optimal: need n >= 1, t >= 0");
    }
    int table_bits = n <= 6 ? (1 << n) : 64;
    if (t >= table_bits) {
        // The message can carry the whole truth table; the identity protocol
        // is exactly optimal.
        if (n > 3) {
            throw CapacityError("brute_force_optimal: explicit protocol needs n <= 3");
        }
        uint64_t tables = uint64_t(1) << (uint64_t(1) << n);
        DeterministicProtocol protocol;
        protocol.n = n;
        protocol.advice_bits = t;
        protocol.message_of.resize(size_t(tables));
        for (uint64_t i = 0; i < tables; i++) {
            protocol.message_of[size_t(i)] = uint8_t(i);
        }
        protocol.decoder = best_response_decoder(n, protocol.message_of, int(tables));
        BruteForceResult result{std::move(protocol), Rational{0, 1}};
        result.success = success_under_mu(result.protocol);
        return result;
    }
    if (n > 2 || t > 2) {
        throw CapacityError("brute_force_optimal: search guarded at n <= 2, t <= 2");
    }

    uint32_t tables = uint32_t(1) << (1 << n);
    int buckets = 1 << t;
    std::vector<int> score = bucket_scores(n);

    // dp[j][mask]: best total score partitioning `mask` into at most j
    // message classes. Submasks are anchored on the lowest set table.
    std::vector<std::vector<int>> dp(size_t(buckets) + 1,
                                     std::vector<int>(size_t(1) << tables, 0));
    dp[1] = score;
    for (int j = 2; j <= buckets; j++) {
        for (uint32_t mask = 0; mask < (uint32_t(1) << tables); mask++) {
            if (mask == 0) {
                continue;
            }
            uint32_t lowbit = mask & (~mask + 1);
            uint32_t rest = mask ^ lowbit;
            int best = 0;
            for (uint32_t sub_rest = rest;; sub_rest = (sub_rest - 1) & rest) {
                uint32_t sub = sub_rest | lowbit;
                best = std::max(best, dp[size_t(j - 1)][mask ^ sub] + score[sub]);
                if (sub_rest == 0) {
                    break;
                }
            }
            dp[size_t(j)][mask] = best;
        }
    }
    uint32_t full = (tables == 32) ? ~uint32_t(0) : (uint32_t(1) << tables) - 1;
    int optimum = dp[size_t(buckets)][full];

    // Lexicographically least optimal message function: assign tables in
    // order, taking the smallest message label whose completion can still
    // reach the optimum. Empty buckets are interchangeable, so only the first
    // empty one is tried.
    std::vector<uint32_t> blocks(size_t(buckets), 0);
    std::vector<uint8_t> message_of(tables, 0);
    std::vector<int> level(size_t(1) << tables);
    std::vector<int> next(size_t(1) << tables);
    for (uint32_t i = 0; i < tables; i++) {
        uint32_t rem = (i + 1 < tables) ? (full >> (i + 1)) << (i + 1) : 0;
        bool placed = false;
        bool tried_empty = false;
        for (int d = 0; d < buckets && !placed; d++) {
            if (blocks[size_t(d)] == 0) {
                if (tried_empty) {
                    continue;
                }
                tried_empty = true;
            }
            std::vector<uint32_t> trial = blocks;
            trial[size_t(d)] |= uint32_t(1) << i;
            if (best_completion(trial, rem, score, level, next) == optimum) {
                blocks = std::move(trial);
                message_of[i] = uint8_t(d);
                placed = true;
            }
        }
        if (!placed) {
            throw std::logic_error("brute_force_optimal: reconstruction failed to match optimum");
        }
    }

    DeterministicProtocol protocol;
    protocol.n = n;
    protocol.advice_bits = t;
    protocol.message_of = std::move(message_of);
    protocol.decoder = best_response_decoder(n, protocol.message_of, buckets);
    BruteForceResult result{std::move(protocol), Rational{0, 1}};
    result.success = success_under_mu(result.protocol);
    uint64_t x_count = (uint64_t(1) << n) - 1;
    Rational expected = Rational::make(optimum, int64_t(uint64_t(tables) * x_count));
    if (!(result.success == expected)) {
        throw std::logic_error("brute_force_optimal: decoder success disagrees with search value");
    }
    return result;
}

}  // namespace advicelab
