#include "advicelab/relation.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace advicelab {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    }
    // Acklam's algorithm: rational approximations on a central region and two
    // tails.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                               1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                               6.680131188771972e+01, -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                               -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                               3.754408661907416e+00};
    const double p_low = 0.02425;
    double q, r;
    if (p < p_low) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p <= 1 - p_low) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    }
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double confidence) {
    if (trials == 0 || successes > trials) {
        throw std::invalid_argument("wilson_interval: need 0 <= successes <= trials, trials >= 1");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("wilson_interval: confidence must be in (0,1)");
    }
    double z = normal_quantile((1 + confidence) / 2);
    double n = double(trials);
    double phat = double(successes) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (phat + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    WilsonInterval out;
    out.low = std::max(0.0, center - half);
    out.high = std::min(1.0, center + half);
    return out;
}

SuccessEstimate estimate_success(const Solver& solver, const Relation& relation, const BitString& x,
                                 double epsilon, uint64_t trials, const RngStream& rng,
                                 double confidence, int threads) {
    if (trials < 1) {
        throw std::invalid_argument("estimate_success: trials must be >= 1");
    }
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("estimate_success: epsilon must be in (0,1]");
    }
    std::vector<uint8_t> outcome(trials, 0);
    parallel_chunks(trials, threads, [&](uint64_t begin, uint64_t end) {
        for (uint64_t i = begin; i < end; i++) {
            RngStream sub = rng.substream(i);
            BitString y = solver.solve(x, epsilon, sub);
            if (int(y.size()) > relation.output_bits) {
                throw std::logic_error("estimate_success: solver output longer than the relation's declared bound");
            }
            outcome[i] = relation.check(x, y) ? 1 : 0;
        }
    });
    uint64_t successes = 0;
    for (uint8_t o : outcome) {
        successes += o;
    }
    SuccessEstimate est;
    est.successes = successes;
    est.trials = trials;
    est.point = double(successes) / double(trials);
    WilsonInterval ci = wilson_interval(successes, trials, confidence);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    est.confidence = confidence;
    est.seed = rng.seed();
    return est;
}

double exact_success(const EnumerableSolver& solver, const Relation& relation, const BitString& x,
                     double epsilon) {
    FiniteDistribution dist = solver.distribution(x, epsilon);
    if (!dist.is_normalized()) {
        throw std::invalid_argument("exact_success: solver distribution not normalized");
    }
    double total = 0;
    for (const auto& [y, p] : dist.support()) {
        if (relation.check(x, y)) {
            total += p;
        }
    }
    return total;
}

int configured_thread_count() {
    const char* env = std::getenv("ADVICE_LAB_THREADS");
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1) {
        hw = 1;
    }
    if (env == nullptr) {
        return 1;
    }
    int requested = std::atoi(env);
    if (requested < 1) {
        return 1;
    }
    return std::min(requested, hw);
}

void parallel_chunks(uint64_t count, int threads,
                     const std::function<void(uint64_t begin, uint64_t end)>& fn) {
    if (threads <= 1 || count < 2) {
        fn(0, count);
        return;
    }
    uint64_t workers = std::min<uint64_t>(uint64_t(threads), count);
    uint64_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::exception_ptr first_error = nullptr;
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    for (uint64_t w = 0; w < workers; w++) {
        uint64_t begin = w * chunk;
        uint64_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failed) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace advicelab
