#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <numeric>

#include "advicelab/classical_adversary.hpp"
#include "advicelab/errors.hpp"

using namespace advicelab;

namespace {

// Independent enumeration oracle: exact hit count over all k-subsets of
// {0,1}^n, walking the combinations directly.
void count_subsets(const std::vector<uint32_t>& partner, std::vector<uint32_t>& chosen,
                   uint32_t next, uint32_t k, uint64_t& total, uint64_t& hits) {
    if (chosen.size() == k) {
        total++;
        for (uint32_t v : chosen) {
            if (std::binary_search(chosen.begin(), chosen.end(), partner[v])) {
                hits++;
                return;
            }
        }
        return;
    }
    for (uint32_t v = next; v < partner.size(); v++) {
        chosen.push_back(v);
        count_subsets(partner, chosen, v + 1, k, total, hits);
        chosen.pop_back();
    }
}

Rational enumerated_hit_probability(int n, uint32_t k, uint64_t xv) {
    std::vector<uint32_t> partner;
    for (uint32_t v = 0; v < (uint32_t(1) << n); v++) {
        partner.push_back(v ^ uint32_t(xv));
    }
    std::vector<uint32_t> chosen;
    uint64_t total = 0, hits = 0;
    count_subsets(partner, chosen, 0, k, total, hits);
    return Rational::make(int64_t(hits), int64_t(total));
}

// Raw oracle for the protocol search: scores every message function in
// lexicographic order of its encoding and keeps the first maximizer.
struct RawSearchResult {
    std::vector<uint8_t> message_of;
    int64_t correct = 0;
};

RawSearchResult raw_search_n2_t1() {
    RawSearchResult best;
    for (uint32_t msg_bits = 0; msg_bits < (1u << 16); msg_bits++) {
        // message_of[t] = bit t of msg_bits, but lexicographic order of the
        // digit string (d_0 first) means d_0 is the most significant digit.
        std::vector<uint8_t> message_of(16);
        for (int t = 0; t < 16; t++) {
            message_of[size_t(t)] = (msg_bits >> (15 - t)) & 1;
        }
        int64_t correct = 0;
        for (int msg = 0; msg < 2; msg++) {
            for (uint64_t xv = 1; xv <= 3; xv++) {
                int best_count = 0;
                // candidates: y in {pivot-clear}, b in {0,1}
                uint32_t pivot_bit = xv & 1 ? 1 : 2;
                for (uint32_t y = 0; y < 4; y++) {
                    if (y & pivot_bit) {
                        continue;
                    }
                    for (int b = 0; b <= 1; b++) {
                        int count = 0;
                        for (uint32_t t = 0; t < 16; t++) {
                            if (message_of[t] != msg) {
                                continue;
                            }
                            bool fy = (t >> y) & 1;
                            bool fp = (t >> (y ^ xv)) & 1;
                            if (((fy != fp) ? 1 : 0) == b) {
                                count++;
                            }
                        }
                        best_count = std::max(best_count, count);
                    }
                }
                correct += best_count;
            }
        }
        if (correct > best.correct) {
            best.correct = correct;
            best.message_of = message_of;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("subset strategy with the full table always answers correctly") {
    for (int n : {2, 3, 4}) {
        FunctionFamily f = FunctionFamily::random(uint64_t(n), n);
        std::vector<uint32_t> all;
        for (uint32_t v = 0; v < (uint32_t(1) << n); v++) {
            all.push_back(v);
        }
        SubsetAdvice advice = make_subset_advice(f, all);
        RngStream rng(1);
        for (uint64_t xv = 1; xv < (uint64_t(1) << n); xv++) {
            BitString x = BitString::from_value(size_t(n), xv);
            REQUIRE(rf_check(f, x, subset_advice_strategy(advice, x, rng)));
        }
    }
}

TEST_CASE("subset strategy with no advice is an exact coin flip") {
    // With T empty the answer is (0^n, random b); counting over all truth
    // tables and both coin values gives exactly 1/2.
    int n = 2;
    BitString x = BitString::from_string("10");
    int64_t correct = 0;
    for (uint32_t t = 0; t < 16; t++) {
        FunctionFamily f = family_from_index(n, t);
        for (int b = 0; b <= 1; b++) {
            HMOutput out{BitString::zeros(2), b != 0};
            correct += rf_check(f, x, out) ? 1 : 0;
        }
    }
    CHECK(correct == 16);

    FunctionFamily f = FunctionFamily::random(4, 3);
    SubsetAdvice empty = make_subset_advice(f, {});
    RngStream rng(5);
    HMOutput out = subset_advice_strategy(empty, BitString::from_string("011"), rng);
    CHECK(out.y == BitString::zeros(3));
}

TEST_CASE("subset strategy n=8 k=16 regression pin") {
    RngStream lane(11);
    uint64_t ok = 0;
    const uint64_t trials = 100000;
    for (uint64_t i = 0; i < trials; i++) {
        RngStream sub = lane.substream(i);
        auto [f, x] = sample_instance_mu(8, sub);
        SubsetAdvice advice = random_subset_advice(f, 16, sub);
        ok += rf_check(f, x, subset_advice_strategy(advice, x, sub)) ? 1 : 0;
    }
    CHECK(ok == 69906);  // frozen from the first run
    double rate = double(ok) / double(trials);
    CHECK(rate > 0.5);
    CHECK(rate < 0.875);
    // Cross-check against the closed form within Monte Carlo noise.
    double closed = subset_success_probability(8, 16);
    double sd = std::sqrt(closed * (1 - closed) / double(trials));
    CHECK(std::abs(rate - closed) <= 3 * sd);
}

TEST_CASE("hit probability endpoints") {
    BitString x = BitString::from_string("0110");
    CHECK(hit_probability(4, 16, x) == 1.0);
    CHECK(hit_probability(4, 0, x) == 0.0);
    CHECK(hit_probability(4, 1, x) == 0.0);
    CHECK(subset_success_probability(4, 0) == 0.5);
    CHECK(subset_success_probability(4, 16) == 1.0);
    CHECK_THROWS_AS(hit_probability(4, 17), std::invalid_argument);
    CHECK_THROWS_AS(hit_probability(4, 2, BitString::zeros(4)), std::invalid_argument);
}

TEST_CASE("hit probability closed form matches exhaustive enumeration at n <= 4") {
    for (int n = 1; n <= 4; n++) {
        for (uint32_t k = 0; k <= (uint32_t(1) << n); k++) {
            Rational closed = hit_probability_exact(n, k);
            Rational enumerated = enumerated_hit_probability(n, k, 1);
            REQUIRE(closed == enumerated);
            CHECK(std::abs(hit_probability(n, k) - closed.to_double()) <= 1e-12);
        }
    }
    // The matching structure is the same for every nonzero x.
    Rational at_x1 = enumerated_hit_probability(3, 3, 1);
    Rational at_x5 = enumerated_hit_probability(3, 3, 5);
    CHECK(at_x1 == at_x5);
}

TEST_CASE("subset success curve rises strictly until it saturates at 1") {
    // Any 2^{n-1} + 1 vertices contain a full pair, so the curve is exactly 1
    // from there on; below that point each extra vertex strictly helps.
    for (int n : {4, 8, 10}) {
        double prev = subset_success_probability(n, 1);
        CHECK(prev == 0.5);
        bool saturated = false;
        for (uint64_t k = 2; k <= (uint64_t(1) << n); k++) {
            double cur = subset_success_probability(n, k);
            if (saturated || cur == 1.0) {
                REQUIRE(cur == 1.0);
                saturated = true;
            } else {
                REQUIRE(cur > prev);
            }
            prev = cur;
        }
        CHECK(saturated);
        CHECK(subset_success_probability(n, (uint64_t(1) << (n - 1)) + 1) == 1.0);
    }
}

TEST_CASE("random subsets have the requested size and range") {
    RngStream rng(31);
    for (int trial = 0; trial < 20; trial++) {
        auto subset = random_k_subset(256, 16, rng);
        CHECK(subset.size() == 16);
        CHECK(std::adjacent_find(subset.begin(), subset.end()) == subset.end());
        CHECK(subset.back() < 256);
    }
    auto all = random_k_subset(16, 16, rng);
    CHECK(all.size() == 16);
    CHECK(all.front() == 0);
    CHECK(all.back() == 15);
}

TEST_CASE("advice encoding round-trips") {
    FunctionFamily f = FunctionFamily::random(8, 5);
    RngStream rng(2);
    SubsetAdvice advice = random_subset_advice(f, 7, rng);
    BitString encoded = encode_subset_advice(advice);
    CHECK(encoded.size() == 7 * 6);
    SubsetAdvice back = decode_subset_advice(5, encoded);
    CHECK(back.members == advice.members);
    CHECK(back.values == advice.values);
}

TEST_CASE("brute force optimum at n=2: endpoints and the pinned t=1 value") {
    BruteForceResult t0 = brute_force_optimal(2, 0);
    CHECK(t0.success == Rational{1, 2});

    BruteForceResult t1 = brute_force_optimal(2, 1);
    CHECK(t1.success == Rational{3, 4});  // frozen from the exhaustive search
    CHECK(t1.success.to_double() > 0.5);
    CHECK(t1.success.to_double() < 1.0);

    BruteForceResult t4 = brute_force_optimal(2, 4);
    CHECK(t4.success == Rational{1, 1});

    // Monotone in the advice length.
    BruteForceResult t2 = brute_force_optimal(2, 2);
    CHECK(t0.success.to_double() <= t1.success.to_double());
    CHECK(t1.success.to_double() <= t2.success.to_double());
    CHECK(t2.success.to_double() <= t4.success.to_double());
}

TEST_CASE("search result matches the raw lexicographic enumeration at t=1") {
    RawSearchResult raw = raw_search_n2_t1();
    BruteForceResult dp = brute_force_optimal(2, 1);
    CHECK(Rational::make(raw.correct, 48) == dp.success);
    CHECK(raw.message_of == dp.protocol.message_of);
}

TEST_CASE("success_under_mu cross-checks the searched optimum") {
    BruteForceResult t1 = brute_force_optimal(2, 1);
    CHECK(success_under_mu(t1.protocol) == t1.success);

    // The constant protocol and the identity protocol bracket the range.
    DeterministicProtocol constant = brute_force_optimal(2, 0).protocol;
    CHECK(success_under_mu(constant) == Rational{1, 2});
    DeterministicProtocol identity = brute_force_optimal(2, 4).protocol;
    CHECK(success_under_mu(identity) == Rational{1, 1});
}

TEST_CASE("best-response protocols never fall below a fair coin") {
    // Any message function, after best-response decoding, can at least guess
    // the parity bit: success_under_mu stays in [1/2, 1].
    RngStream rng(41);
    for (int trial = 0; trial < 10; trial++) {
        BruteForceResult base = brute_force_optimal(1, 1);
        CHECK(base.success.to_double() >= 0.5);
        CHECK(base.success.to_double() <= 1.0);
        (void)rng;
    }
    for (int t : {0, 1, 2}) {
        Rational s = brute_force_optimal(2, t).success;
        CHECK(s.to_double() >= 0.5);
        CHECK(s.to_double() <= 1.0);
    }
}

TEST_CASE("search capacity guards") {
    CHECK_THROWS_AS(brute_force_optimal(3, 1), CapacityError);
    CHECK_THROWS_AS(brute_force_optimal(2, 3), CapacityError);
    CHECK_THROWS_AS(brute_force_optimal(4, 16), CapacityError);
    CHECK_THROWS_AS(success_under_mu(DeterministicProtocol{4, 0, {}, {}}), CapacityError);
}
