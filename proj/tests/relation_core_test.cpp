#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "advicelab/relation.hpp"

using namespace advicelab;

namespace {

Relation parity_relation(int n) {
    // y (1 bit) must equal the parity of x.
    Relation r;
    r.name = "parity";
    r.input_bits = n;
    r.output_bits = 1;
    r.check = [](const BitString& x, const BitString& y) {
        return y.size() == 1 && y.bit(0) == (x.popcount() % 2 == 1);
    };
    return r;
}

Solver fixed_solver(const BitString& y) {
    Solver s;
    s.solve = [y](const BitString&, double, RngStream&) { return y; };
    return s;
}

}  // namespace

TEST_CASE("normal quantile matches standard values") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-7));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.5758293035489004).epsilon(1e-7));
    CHECK(std::abs(normal_quantile(0.5)) <= 1e-9);
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-7));
    CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
}

TEST_CASE("wilson interval boundaries") {
    WilsonInterval zero = wilson_interval(0, 10, 0.99);
    CHECK(zero.low >= 0.0);
    CHECK(zero.low <= 1e-12);
    WilsonInterval full = wilson_interval(10, 10, 0.99);
    CHECK(full.high == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(full.low == doctest::Approx(0.6011459066950919).epsilon(1e-7));
}

TEST_CASE("wilson interval closed form at (50, 100, 0.95)") {
    WilsonInterval ci = wilson_interval(50, 100, 0.95);
    CHECK(ci.low == doctest::Approx(0.4038315303659956).epsilon(1e-7));
    CHECK(ci.high == doctest::Approx(0.5961684696340044).epsilon(1e-7));
    CHECK(ci.low < 0.5);
    CHECK(ci.high > 0.5);
}

TEST_CASE("wilson interval rejects bad arguments") {
    CHECK_THROWS_AS(wilson_interval(5, 0, 0.99), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(11, 10, 0.99), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(1, 10, 1.0), std::invalid_argument);
}

TEST_CASE("estimate_success on deterministic solvers") {
    Relation r = parity_relation(3);
    BitString x = BitString::from_string("110");  // parity 0

    SuccessEstimate good = estimate_success(fixed_solver(BitString::from_string("0")), r, x, 0.5,
                                            100, RngStream(3));
    CHECK(good.successes == 100);
    CHECK(good.point == 1.0);
    CHECK(good.ci_high == doctest::Approx(1.0).epsilon(1e-12));

    SuccessEstimate bad = estimate_success(fixed_solver(BitString::from_string("1")), r, x, 0.5,
                                           100, RngStream(3));
    CHECK(bad.successes == 0);
    CHECK(bad.point == 0.0);
}

TEST_CASE("estimate_success is reproducible bit for bit") {
    Relation r = parity_relation(4);
    BitString x = BitString::from_string("1010");
    Solver coin;
    coin.solve = [](const BitString&, double, RngStream& rng) {
        return BitString::from_value(1, rng.bernoulli(0.5) ? 1 : 0);
    };
    SuccessEstimate a = estimate_success(coin, r, x, 0.5, 500, RngStream(99));
    SuccessEstimate b = estimate_success(coin, r, x, 0.5, 500, RngStream(99));
    CHECK(a == b);
    // Trial substreams make the count independent of the thread layout.
    SuccessEstimate c = estimate_success(coin, r, x, 0.5, 500, RngStream(99), 0.99, 4);
    CHECK(a == c);
    SuccessEstimate d = estimate_success(coin, r, x, 0.5, 500, RngStream(100));
    CHECK(a.seed != d.seed);
}

TEST_CASE("estimate_success enforces the declared output bound") {
    Relation r = parity_relation(3);
    Solver oversize = fixed_solver(BitString::from_string("0101"));
    CHECK_THROWS_AS(
        estimate_success(oversize, r, BitString::from_string("101"), 0.5, 10, RngStream(1)),
        std::logic_error);
}

TEST_CASE("solver failures abort the whole estimate") {
    Relation r = parity_relation(3);
    Solver flaky;
    flaky.solve = [](const BitString&, double, RngStream& rng) -> BitString {
        if (rng.uniform() < 0.2) {
            throw std::runtime_error("internal failure");
        }
        return BitString::from_string("0");
    };
    CHECK_THROWS_AS(
        estimate_success(flaky, r, BitString::from_string("110"), 0.5, 200, RngStream(5)),
        std::runtime_error);
    CHECK_THROWS_AS(
        estimate_success(flaky, r, BitString::from_string("110"), 0.5, 200, RngStream(5), 0.99, 4),
        std::runtime_error);
}

TEST_CASE("estimate_success rejects bad parameters") {
    Relation r = parity_relation(3);
    BitString x = BitString::from_string("110");
    Solver s = fixed_solver(BitString::from_string("0"));
    CHECK_THROWS_AS(estimate_success(s, r, x, 0.5, 0, RngStream(1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_success(s, r, x, 0.0, 10, RngStream(1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_success(s, r, x, 1.5, 10, RngStream(1)), std::invalid_argument);
}

TEST_CASE("exact_success on enumerable solvers") {
    Relation r = parity_relation(3);
    BitString x = BitString::from_string("110");

    EnumerableSolver mixed;
    mixed.distribution = [](const BitString&, double) {
        FiniteDistribution d;
        d.add(BitString::from_string("0"), 0.8125);
        d.add(BitString::from_string("1"), 0.1875);
        return d;
    };
    CHECK(exact_success(mixed, r, x) == doctest::Approx(0.8125).epsilon(1e-12));

    EnumerableSolver sure;
    sure.distribution = [](const BitString&, double) {
        return FiniteDistribution::point_mass(BitString::from_string("0"));
    };
    CHECK(exact_success(sure, r, x) == 1.0);

    EnumerableSolver wrong;
    wrong.distribution = [](const BitString&, double) {
        return FiniteDistribution::point_mass(BitString::from_string("1"));
    };
    CHECK(exact_success(wrong, r, x) == 0.0);

    EnumerableSolver unnormalized;
    unnormalized.distribution = [](const BitString&, double) {
        FiniteDistribution d;
        d.add(BitString::from_string("0"), 0.5);
        return d;
    };
    CHECK_THROWS_AS(exact_success(unnormalized, r, x), std::invalid_argument);
}

TEST_CASE("estimates track the exact success within the interval half-width") {
    // Monte Carlo point vs exact probability over 200 independently seeded
    // estimates; the deviation should fit inside the Wilson half-width in at
    // least the nominal fraction of repetitions.
    Relation r = parity_relation(3);
    BitString x = BitString::from_string("110");
    double p_true = 0.9;

    Solver sampler;
    sampler.solve = [p_true](const BitString&, double, RngStream& rng) {
        return BitString::from_value(1, rng.bernoulli(p_true) ? 0 : 1);
    };
    EnumerableSolver enumerated;
    enumerated.distribution = [p_true](const BitString&, double) {
        FiniteDistribution d;
        d.add(BitString::from_string("0"), p_true);
        d.add(BitString::from_string("1"), 1 - p_true);
        return d;
    };
    double exact = exact_success(enumerated, r, x);
    CHECK(exact == doctest::Approx(p_true).epsilon(1e-12));

    RngStream master(2024);
    int covered = 0;
    const int reps = 200;
    for (int rep = 0; rep < reps; rep++) {
        SuccessEstimate est = estimate_success(sampler, r, x, 0.5, 1000, master.substream(rep));
        double half = (est.ci_high - est.ci_low) / 2;
        if (std::abs(est.point - exact) <= half) {
            covered++;
        }
    }
    CHECK(covered >= int(0.99 * reps));
}

TEST_CASE("parallel_chunks covers the range once") {
    std::vector<int> hits(1000, 0);
    parallel_chunks(1000, 4, [&](uint64_t begin, uint64_t end) {
        for (uint64_t i = begin; i < end; i++) {
            hits[i]++;
        }
    });
    for (int h : hits) {
        CHECK(h == 1);
    }
}

TEST_CASE("rng substreams are independent of consumption order") {
    RngStream a(77);
    a.next_u64();
    a.next_u64();
    RngStream b(77);
    CHECK(a.substream(5).next_u64() == b.substream(5).next_u64());
    CHECK(a.substream(5).next_u64() != a.substream(6).next_u64());
}

TEST_CASE("uniform_below stays in range and hits all residues") {
    RngStream rng(123);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; i++) {
        uint64_t v = rng.uniform_below(7);
        REQUIRE(v < 7);
        counts[size_t(v)]++;
    }
    double mean = 10000.0;
    double sd = std::sqrt(70000.0 * (1.0 / 7) * (6.0 / 7));
    for (int c : counts) {
        CHECK(std::abs(c - mean) <= 4 * sd);
    }
}
