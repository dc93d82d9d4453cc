#include "advicelab/experiment.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <vector>

#include "advicelab/classical_adversary.hpp"
#include "advicelab/derandomize.hpp"
#include "advicelab/errors.hpp"
#include "advicelab/hidden_matching.hpp"
#include "advicelab/kolmogorov.hpp"
#include "advicelab/prefix_search.hpp"
#include "advicelab/quantum.hpp"
#include "advicelab/relation.hpp"
#include "advicelab/report.hpp"

namespace advicelab {

namespace {

std::string opt_str(const std::optional<double>& v) {
    return v ? format_double(*v) : "-";
}

std::string opt_str(const std::optional<int>& v) {
    return v ? std::to_string(*v) : "-";
}

std::string opt_str(const std::optional<uint64_t>& v) {
    return v ? std::to_string(*v) : "-";
}

std::string config_comment(const ExperimentConfig& cfg) {
    return std::string("advice_lab v") + kVersion + " subcommand=" + cfg.subcommand +
           " n=" + std::to_string(cfg.n) + " trials=" + std::to_string(cfg.trials) +
           " epsilon=" + format_double(cfg.epsilon) + " lambda=" + opt_str(cfg.lambda) +
           " advice_bits=" + opt_str(cfg.advice_bits) + " k_subset=" + opt_str(cfg.k_subset) +
           " p=" + std::to_string(cfg.p) + " samples=" + std::to_string(cfg.samples) +
           " threshold=" + opt_str(cfg.threshold) + " seed=" + std::to_string(cfg.seed) +
           " format=" + cfg.format;
}

std::string hex_value(uint64_t v, int bits) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*" PRIx64, (bits + 3) / 4, v);
    return buf;
}

// Program bits packed MSB-first into nibbles (zero-padded at the end),
// prefixed with the bit length: "5:a8".
std::string program_hex(const BitString& bits) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    for (size_t base = 0; base < bits.size(); base += 4) {
        int d = 0;
        for (size_t j = 0; j < 4 && base + j < bits.size(); j++) {
            if (bits.bit(base + j)) {
                d |= 8 >> j;
            }
        }
        hex.push_back(digits[d]);
    }
    return std::to_string(bits.size()) + ":" + hex;
}

std::filesystem::path plot_path(const std::string& out_path, const std::string& curve) {
    std::filesystem::path p(out_path);
    std::filesystem::path stem = p.parent_path() / p.stem();
    return stem.string() + "_" + curve + ".dat";
}

void write_report(const ExperimentConfig& cfg, Report& report) {
    report.config_comment = config_comment(cfg);
    report.delimiter = cfg.format == "tsv" ? '\t' : ',';
    write_file_atomic(cfg.out_path, report.serialize());
}

int resolve_threads(const ExperimentConfig& cfg) {
    return cfg.threads > 0 ? cfg.threads : configured_thread_count();
}

// --- hm-quantum -----------------------------------------------------------

void run_hm_quantum(const ExperimentConfig& cfg) {
    if (cfg.n > 10) {
        throw CapacityError("hm-quantum: the per-x exact-distribution sweep is guarded at n <= 10");
    }
    FunctionFamily f = FunctionFamily::random(cfg.seed, cfg.n);
    Relation relation = hm_relation(f);
    Solver solver = hm_quantum_solver(f, NoiseSpec{0.0});
    RngStream master(cfg.seed);
    int threads = resolve_threads(cfg);

    Report report;
    report.columns = {"n", "x", "trials", "successes", "success", "ci_low", "ci_high", "tv", "seed"};
    for (uint64_t xv = 1; xv < f.domain_size(); xv++) {
        BitString x = BitString::from_value(size_t(cfg.n), xv);
        SuccessEstimate est =
            estimate_success(solver, relation, x, 1.0, cfg.trials, master.substream(xv), 0.99, threads);
        double tv = tv_distance(output_distribution(f, x), analytic_distribution(f, x));
        report.rows.push_back({std::to_string(cfg.n), x.str(), std::to_string(est.trials),
                               std::to_string(est.successes), format_double(est.point),
                               format_double(est.ci_low), format_double(est.ci_high),
                               format_double(tv), std::to_string(cfg.seed)});
    }
    write_report(cfg, report);
}

// --- hm-noise --------------------------------------------------------------

void run_hm_noise(const ExperimentConfig& cfg) {
    if (cfg.n > 10) {
        throw CapacityError("hm-noise: the exact-distribution column is guarded at n <= 10");
    }
    FunctionFamily f = FunctionFamily::random(cfg.seed, cfg.n);
    RngStream master(cfg.seed);
    int threads = resolve_threads(cfg);
    std::vector<double> lambdas =
        cfg.lambda ? std::vector<double>{*cfg.lambda} : std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0};

    Report report;
    report.columns = {"n",      "lambda",  "trials", "successes", "success",
                      "ci_low", "ci_high", "exact",  "seed"};
    std::vector<std::pair<double, double>> curve;
    for (size_t li = 0; li < lambdas.size(); li++) {
        double lambda = lambdas[li];
        NoiseSpec noise{lambda};
        RngStream lane = master.substream(li);
        std::vector<uint8_t> ok(cfg.trials, 0);
        parallel_chunks(cfg.trials, threads, [&](uint64_t begin, uint64_t end) {
            for (uint64_t i = begin; i < end; i++) {
                RngStream sub = lane.substream(i);
                uint64_t xv = 1 + sub.uniform_below(f.domain_size() - 1);
                BitString x = BitString::from_value(size_t(cfg.n), xv);
                HMOutput out = run_protocol(f, x, noise, sub);
                ok[i] = rf_check(f, x, out) ? 1 : 0;
            }
        });
        uint64_t successes = 0;
        for (uint8_t o : ok) {
            successes += o;
        }
        double point = double(successes) / double(cfg.trials);
        WilsonInterval ci = wilson_interval(successes, cfg.trials, 0.99);
        double exact = 0;
        for (uint64_t xv = 1; xv < f.domain_size(); xv++) {
            BitString x = BitString::from_value(size_t(cfg.n), xv);
            Relation relation = hm_relation(f);
            exact += exact_success(hm_quantum_enumerable(f, noise), relation, x);
        }
        exact /= double(f.domain_size() - 1);
        report.rows.push_back({std::to_string(cfg.n), format_double(lambda),
                               std::to_string(cfg.trials), std::to_string(successes),
                               format_double(point), format_double(ci.low), format_double(ci.high),
                               format_double(exact), std::to_string(cfg.seed)});
        curve.emplace_back(lambda, point);
    }
    write_report(cfg, report);
    write_plot_file(plot_path(cfg.out_path, "noise"), config_comment(cfg), curve);
}

// --- hm-classical ----------------------------------------------------------

void append_subset_rows(const ExperimentConfig& cfg, uint64_t k, Report& report,
                        std::vector<std::pair<double, double>>& curve) {
    int advice_len = int(k) * (cfg.n + 1);
    double exact = subset_success_probability(cfg.n, k);
    report.rows.push_back({std::to_string(cfg.n), std::to_string(advice_len), "subset", "exact",
                           format_double(exact), format_double(exact), format_double(exact),
                           std::to_string(cfg.seed)});
    curve.emplace_back(double(k), exact);
    if (cfg.trials == 0) {
        return;
    }
    RngStream lane = RngStream(cfg.seed).substream(k);
    std::vector<uint8_t> ok(cfg.trials, 0);
    parallel_chunks(cfg.trials, resolve_threads(cfg), [&](uint64_t begin, uint64_t end) {
        for (uint64_t i = begin; i < end; i++) {
            RngStream sub = lane.substream(i);
            auto [f, x] = sample_instance_mu(cfg.n, sub);
            SubsetAdvice advice = random_subset_advice(f, k, sub);
            HMOutput out = subset_advice_strategy(advice, x, sub);
            ok[i] = rf_check(f, x, out) ? 1 : 0;
        }
    });
    uint64_t successes = 0;
    for (uint8_t o : ok) {
        successes += o;
    }
    WilsonInterval ci = wilson_interval(successes, cfg.trials, 0.99);
    report.rows.push_back({std::to_string(cfg.n), std::to_string(advice_len), "subset",
                           std::to_string(cfg.trials),
                           format_double(double(successes) / double(cfg.trials)),
                           format_double(ci.low), format_double(ci.high),
                           std::to_string(cfg.seed)});
}

void run_hm_classical(const ExperimentConfig& cfg) {
    if (cfg.n > 16) {
        throw CapacityError("hm-classical: guarded at n <= 16");
    }
    Report report;
    report.columns = {"n",       "advice_bits", "mode",   "exact_or_trials",
                      "success", "ci_low",      "ci_high", "seed"};
    std::vector<std::pair<double, double>> curve;
    if (cfg.advice_bits) {
        BruteForceResult result = brute_force_optimal(cfg.n, *cfg.advice_bits);
        double success = result.success.to_double();
        report.rows.push_back({std::to_string(cfg.n), std::to_string(*cfg.advice_bits),
                               "bruteforce", "exact", format_double(success),
                               format_double(success), format_double(success),
                               std::to_string(cfg.seed)});
    } else if (cfg.k_subset) {
        append_subset_rows(cfg, *cfg.k_subset, report, curve);
    } else {
        uint64_t domain = uint64_t(1) << cfg.n;
        append_subset_rows(cfg, 0, report, curve);
        for (uint64_t k = 1; k <= domain; k *= 2) {
            append_subset_rows(cfg, k, report, curve);
        }
    }
    write_report(cfg, report);
    write_plot_file(plot_path(cfg.out_path, "subset"), config_comment(cfg), curve);
}

// --- derandomize -----------------------------------------------------------

// Smallest subset size whose guess-failure (1 - hit)/2 is at most eps.
uint64_t subset_size_for_error(int n, double eps) {
    uint64_t domain = uint64_t(1) << n;
    for (uint64_t k = 0; k <= domain; k++) {
        if ((1.0 - hit_probability(n, k)) / 2.0 <= eps) {
            return k;
        }
    }
    return domain;
}

RandomizedAdvice hm_subset_randomized_advice(const FunctionFamily& f) {
    RandomizedAdvice advice;
    advice.description = "subset advice for hidden matching, n=" + std::to_string(f.n());
    advice.sample = [f](double epsilon, RngStream& rng) {
        uint64_t k = subset_size_for_error(f.n(), epsilon);
        return encode_subset_advice(random_subset_advice(f, k, rng));
    };
    return advice;
}

void run_derandomize(const ExperimentConfig& cfg) {
    if (cfg.n > 10) {
        throw CapacityError("derandomize: per-x exact averaging is guarded at n <= 10");
    }
    FunctionFamily f = FunctionFamily::random(cfg.seed, cfg.n);
    RngStream master(cfg.seed);
    uint64_t k = derandomized_sample_count(cfg.n, cfg.epsilon);
    RngStream draw = master.substream(1);
    DerandomizedAdvice der = derandomize_advice(hm_subset_randomized_advice(f), cfg.n, cfg.epsilon, draw);

    uint64_t domain = f.domain_size();
    uint64_t subset_k = subset_size_for_error(cfg.n, cfg.epsilon / 2);
    double orig = subset_success_probability(cfg.n, subset_k);

    // covered[x] counts samples revealing a full matching pair for x.
    std::vector<uint64_t> covered(domain, 0);
    for (const auto& w : der.samples) {
        SubsetAdvice advice = decode_subset_advice(cfg.n, w);
        std::vector<uint8_t> hit(domain, 0);
        for (size_t i = 0; i < advice.members.size(); i++) {
            for (size_t j = i + 1; j < advice.members.size(); j++) {
                hit[advice.members[i] ^ advice.members[j]] = 1;
            }
        }
        for (uint64_t xv = 1; xv < domain; xv++) {
            covered[xv] += hit[xv];
        }
    }

    Report report;
    report.columns = {"n", "epsilon", "k", "x", "orig_success", "derand_success", "seed"};
    for (uint64_t xv = 1; xv < domain; xv++) {
        double c = double(covered[xv]);
        double derand = (c + 0.5 * (double(k) - c)) / double(k);
        BitString x = BitString::from_value(size_t(cfg.n), xv);
        report.rows.push_back({std::to_string(cfg.n), format_double(cfg.epsilon),
                               std::to_string(k), x.str(), format_double(orig),
                               format_double(derand), std::to_string(cfg.seed)});
    }
    write_report(cfg, report);
}

// --- kt ----------------------------------------------------------------------

void run_kt(const ExperimentConfig& cfg) {
    if (cfg.n > 16) {
        throw CapacityError("kt: guarded at n <= 16");
    }
    double threshold = cfg.threshold ? *cfg.threshold : double(cfg.n) / 2.0;
    auto census = low_kt_census(cfg.n, threshold);

    Report report;
    report.columns = {"y_hex", "kt_value", "witness_hex", "steps"};
    for (const auto& entry : census) {
        report.rows.push_back({hex_value(entry.y.value(), cfg.n), format_double(entry.kt_value),
                               program_hex(entry.witness.code), std::to_string(entry.steps)});
    }
    write_report(cfg, report);

    // Solver demo on stdout: both error branches of the high-kt solver.
    RngStream rng(cfg.seed);
    BitString x = BitString::zeros(size_t(cfg.n));
    RngStream random_branch = rng.substream(0);
    BitString random_y = fbpp_high_kt_solver(x, 0.5, random_branch);
    RngStream det_branch = rng.substream(1);
    BitString det_y = fbpp_high_kt_solver(x, std::exp2(-double(cfg.n)), det_branch);
    double failure = double(count_low_kt(cfg.n, double(cfg.n) / 2.0)) / double(uint64_t(1) << cfg.n);
    std::cout << "low-kt census: " << census.size() << " strings below threshold "
              << format_double(threshold) << "\n"
              << "random-branch sample (eps=0.5): " << random_y.str()
              << " (exact failure probability " << format_double(failure) << ")\n"
              << "deterministic-branch output: " << det_y.str() << "\n";
}

// --- prefix-search -----------------------------------------------------------

void run_prefix_search(const ExperimentConfig& cfg) {
    if (cfg.p < 1 || cfg.p > 12) {
        throw CapacityError("prefix-search: p guarded at 12");
    }
    RngStream master(cfg.seed);
    RngStream setup = master.substream(0);
    BitString target = setup.random_bits(size_t(cfg.p));
    int p = cfg.p;

    Solver solver;
    solver.resource_note = "synthetic near-deterministic sampler";
    solver.solve = [target, p](const BitString&, double epsilon, RngStream& rng) {
        if (rng.bernoulli(epsilon / 2)) {
            return rng.random_bits(size_t(p));
        }
        return target;
    };

    PrefixOracleConfig oracle_cfg;
    oracle_cfg.samples_per_query = cfg.samples;
    std::vector<PrefixQueryTrace> trace;
    RngStream search_rng = master.substream(1);
    BitString found = prefix_search(solver, BitString::zeros(size_t(cfg.n)), p, oracle_cfg,
                                    search_rng, &trace);

    Report report;
    report.columns = {"step", "z", "empirical_fraction", "answer"};
    for (const auto& q : trace) {
        report.rows.push_back({std::to_string(q.step), q.z.str(), format_double(q.fraction),
                               q.answer ? "YES" : "NO"});
    }
    write_report(cfg, report);
    std::cout << "target " << target.str() << " reconstructed " << found.str() << " "
              << (found == target ? "MATCH" : "MISMATCH") << "\n";
}

// --- samp-sep ----------------------------------------------------------------

void run_samp_sep(const ExperimentConfig& cfg) {
    int b_max = cfg.advice_bits ? *cfg.advice_bits : cfg.n;
    if (cfg.n > 4 || b_max > 12) {
        throw CapacityError("samp-sep: guarded at n <= 4, advice bits <= 12");
    }
    int n = cfg.n;
    Report report;
    report.columns = {"n", "b", "distinct_count"};
    for (int b = 0; b <= b_max; b++) {
        // Point mass on the advice prefix, zero-padded to n bits; at b = n
        // this echoes the advice verbatim.
        AdviceIndexedSampler echo = [n](const BitString& advice) {
            BitString y = BitString::zeros(size_t(n));
            for (size_t i = 0; i < advice.size() && i < size_t(n); i++) {
                y.set_bit(i, advice.bit(i));
            }
            return FiniteDistribution::point_mass(y);
        };
        uint64_t count = distinct_distribution_count(echo, b, n);
        report.rows.push_back({std::to_string(n), std::to_string(b), std::to_string(count)});
    }
    write_report(cfg, report);

    // TV demo: empirical uniform sampling over a small S versus the exact
    // uniform distribution.
    RngStream rng = RngStream(cfg.seed).substream(7);
    std::vector<BitString> S;
    for (uint64_t v = 0; v < 5 && v < (uint64_t(1) << n); v++) {
        S.push_back(BitString::from_value(size_t(n), v * 3 % (uint64_t(1) << n)));
    }
    FiniteDistribution empirical;
    for (uint64_t i = 0; i < cfg.trials; i++) {
        empirical.add(sampbpp_rpoly_uniform_task(S, rng), 1.0 / double(cfg.trials));
    }
    double tv = tv_distance(empirical, FiniteDistribution::uniform(S));
    std::cout << "uniform-task TV over " << cfg.trials << " trials, |S|=" << S.size() << ": "
              << format_double(tv) << "\n";
}

// --- postselect-demo ---------------------------------------------------------

void run_postselect(const ExperimentConfig& cfg) {
    if (cfg.n > 20) {
        throw CapacityError("postselect-demo: guarded at n <= 20");
    }
    FunctionFamily L = FunctionFamily::random(cfg.seed, cfg.n);
    RngStream master(cfg.seed);
    uint64_t runs = std::min<uint64_t>(cfg.trials, 100);

    Report report;
    report.columns = {"n", "x", "attempts", "bit", "expected", "seed"};
    for (uint64_t r = 0; r < runs; r++) {
        RngStream sub = master.substream(r);
        BitString x = sub.random_bits(size_t(cfg.n));
        auto result = postselect_demo(L, x, sub);
        if (!result) {
            throw std::runtime_error("postselect-demo: iteration cap exceeded");
        }
        report.rows.push_back({std::to_string(cfg.n), x.str(), std::to_string(result->attempts),
                               result->bit ? "1" : "0", L.eval(x) ? "1" : "0",
                               std::to_string(cfg.seed)});
    }
    write_report(cfg, report);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.n < 1) {
        throw ConfigError("n must be >= 1");
    }
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0)) {
        throw ConfigError("epsilon must be in (0,1]");
    }
    if (cfg.lambda && (*cfg.lambda < 0.0 || *cfg.lambda > 1.0)) {
        throw ConfigError("lambda must be in [0,1]");
    }
    if (cfg.advice_bits && *cfg.advice_bits < 0) {
        throw ConfigError("advice-bits must be >= 0");
    }
    if (cfg.format != "csv" && cfg.format != "tsv") {
        throw ConfigError("format must be csv or tsv");
    }
    if (cfg.samples < 1) {
        throw ConfigError("samples must be >= 1");
    }
    if (cfg.trials < 1 && cfg.subcommand != "hm-classical") {
        throw ConfigError("trials must be >= 1");
    }
}

}  // namespace

std::string default_out_path(const std::string& subcommand) {
    if (subcommand == "hm-quantum") return "hm_quantum.csv";
    if (subcommand == "hm-noise") return "hm_noise.csv";
    if (subcommand == "hm-classical") return "hm_classical.csv";
    if (subcommand == "derandomize") return "derand.csv";
    if (subcommand == "kt") return "kt_lowset.csv";
    if (subcommand == "prefix-search") return "prefix_trace.csv";
    if (subcommand == "samp-sep") return "samp_count.csv";
    if (subcommand == "postselect-demo") return "postselect.csv";
    return "report.csv";
}

int run_experiment(const ExperimentConfig& config) {
    ExperimentConfig cfg = config;
    if (cfg.out_path.empty()) {
        cfg.out_path = default_out_path(cfg.subcommand);
    }
    auto start = std::chrono::steady_clock::now();
    try {
        validate(cfg);
        if (cfg.subcommand == "hm-quantum") {
            run_hm_quantum(cfg);
        } else if (cfg.subcommand == "hm-noise") {
            run_hm_noise(cfg);
        } else if (cfg.subcommand == "hm-classical") {
            run_hm_classical(cfg);
        } else if (cfg.subcommand == "derandomize") {
            run_derandomize(cfg);
        } else if (cfg.subcommand == "kt") {
            run_kt(cfg);
        } else if (cfg.subcommand == "prefix-search") {
            run_prefix_search(cfg);
        } else if (cfg.subcommand == "samp-sep") {
            run_samp_sep(cfg);
        } else if (cfg.subcommand == "postselect-demo") {
            run_postselect(cfg);
        } else {
            throw ConfigError("unknown subcommand: " + cfg.subcommand);
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity guard: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << cfg.subcommand << ": wrote " << cfg.out_path << " in " << elapsed << " s\n";
    return 0;
}

}  // namespace advicelab
