#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "advicelab/report.hpp"

namespace fs = std::filesystem;
using advicelab::Report;

namespace {

const char* kCli = ADVICE_LAB_CLI_PATH;

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("advicelab_cli_test_" + std::to_string(getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + std::string(kCli) + " " + args +
                      " >/dev/null 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    return advicelab::read_file(p);
}

}  // namespace

TEST_CASE("unknown flags and bad values exit with the config code") {
    CHECK(run_cli("hm-noise --no-such-flag 1") == 2);
    CHECK(run_cli("no-such-subcommand") == 2);
    CHECK(run_cli("") == 2);
    fs::path out = scratch_dir() / "bad.csv";
    CHECK(run_cli("hm-noise --n 3 --epsilon 2.0 --trials 10 --out " + out.string()) == 2);
    CHECK(run_cli("hm-noise --n 3 --format xml --trials 10 --out " + out.string()) == 2);
    CHECK(run_cli("hm-noise --n 3 --lambda 1.5 --trials 10 --out " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("capacity guards exit with code 3 and leave no partial file") {
    fs::path out = scratch_dir() / "guard.csv";
    CHECK(run_cli("hm-quantum --n 30 --trials 10 --out " + out.string()) == 3);
    CHECK(run_cli("samp-sep --n 9 --out " + out.string()) == 3);
    CHECK(run_cli("hm-classical --n 3 --advice-bits 1 --out " + out.string()) == 3);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("hm-quantum reports certain success and tiny tv at n=3") {
    fs::path out = scratch_dir() / "hmq.csv";
    REQUIRE(run_cli("hm-quantum --n 3 --trials 200 --seed 7 --out " + out.string()) == 0);
    Report report = Report::parse(slurp(out));
    CHECK(report.columns.size() == 9);
    CHECK(report.rows.size() == 7);
    size_t success_col = 4, tv_col = 7;
    for (const auto& row : report.rows) {
        CHECK(row[success_col] == "1");
        CHECK(std::stod(row[tv_col]) <= 1e-9);
    }
}

TEST_CASE("reruns with the same seed are byte-identical") {
    fs::path a = scratch_dir() / "noise_a.csv";
    fs::path b = scratch_dir() / "noise_b.csv";
    std::string common = "hm-noise --n 3 --trials 2000 --seed 5 --out ";
    REQUIRE(run_cli(common + a.string()) == 0);
    REQUIRE(run_cli(common + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));

    // The thread cap must not change any output byte.
    fs::path c = scratch_dir() / "noise_c.csv";
    REQUIRE(run_cli(common + c.string(), "ADVICE_LAB_THREADS=2") == 0);
    CHECK(slurp(a) == slurp(c));

    // Plot data is emitted alongside the sweep and reproduces too.
    fs::path plot_a = scratch_dir() / "noise_a_noise.dat";
    REQUIRE(fs::exists(plot_a));
    std::string plot = slurp(plot_a);
    CHECK(plot.find("# x y") != std::string::npos);
}

TEST_CASE("emitted reports round-trip through the parser") {
    fs::path out = scratch_dir() / "roundtrip.csv";
    REQUIRE(run_cli("hm-classical --n 4 --trials 200 --seed 9 --out " + out.string()) == 0);
    std::string text = slurp(out);
    Report report = Report::parse(text);
    CHECK(report.serialize() == text);
    CHECK(Report::parse(report.serialize()) == report);
    CHECK(report.config_comment.find("subcommand=hm-classical") != std::string::npos);
    CHECK(report.config_comment.find("seed=9") != std::string::npos);

    fs::path tsv = scratch_dir() / "roundtrip.tsv";
    REQUIRE(run_cli("hm-classical --n 4 --trials 100 --format tsv --seed 9 --out " + tsv.string()) == 0);
    std::string tsv_text = slurp(tsv);
    Report tsv_report = Report::parse(tsv_text);
    CHECK(tsv_report.delimiter == '\t');
    CHECK(tsv_report.serialize() == tsv_text);
}

TEST_CASE("brute-force hm-classical rows carry exact values") {
    fs::path out = scratch_dir() / "brute.csv";
    REQUIRE(run_cli("hm-classical --n 2 --advice-bits 0 --out " + out.string()) == 0);
    Report report = Report::parse(slurp(out));
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0][2] == "bruteforce");
    CHECK(report.rows[0][3] == "exact");
    CHECK(report.rows[0][4] == "0.5");
}

TEST_CASE("subset sweep emits a monotone curve file") {
    fs::path out = scratch_dir() / "subset.csv";
    REQUIRE(run_cli("hm-classical --n 6 --trials 500 --seed 3 --out " + out.string()) == 0);
    fs::path plot = scratch_dir() / "subset_subset.dat";
    REQUIRE(fs::exists(plot));
    std::ifstream in(plot);
    std::string line;
    double prev = -1;
    int points = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        double x, y;
        REQUIRE(sscanf(line.c_str(), "%lf %lf", &x, &y) == 2);
        CHECK(y >= prev);
        prev = y;
        points++;
    }
    CHECK(points == 8);  // k = 0, 1, 2, 4, ..., 64
}

TEST_CASE("derandomize keeps every input above the error target") {
    fs::path out = scratch_dir() / "derand.csv";
    REQUIRE(run_cli("derandomize --n 4 --epsilon 0.2 --seed 2 --out " + out.string()) == 0);
    Report report = Report::parse(slurp(out));
    CHECK(report.columns == std::vector<std::string>{"n", "epsilon", "k", "x", "orig_success",
                                                     "derand_success", "seed"});
    CHECK(report.rows.size() == 15);
    for (const auto& row : report.rows) {
        CHECK(row[2] == "10000");  // ceil(100 * 4 / 0.04)
        CHECK(std::stod(row[5]) >= 0.8);
    }
}

TEST_CASE("kt census runs, accepts the dump action word, and pins the empty census") {
    fs::path out = scratch_dir() / "kt.csv";
    REQUIRE(run_cli("kt dump --n 10 --threshold 5 --out " + out.string()) == 0);
    Report report = Report::parse(slurp(out));
    CHECK(report.columns == std::vector<std::string>{"y_hex", "kt_value", "witness_hex", "steps"});
    CHECK(report.rows.empty());
    CHECK(run_cli("kt --n 10 --threshold 99 --out " + out.string()) == 3);
    CHECK(run_cli("kt frobnicate --n 4 --out " + out.string()) == 2);
}

TEST_CASE("prefix-search emits one trace row per output bit") {
    fs::path out = scratch_dir() / "prefix.csv";
    REQUIRE(run_cli("prefix-search --p 6 --samples 400 --seed 11 --out " + out.string()) == 0);
    Report report = Report::parse(slurp(out));
    CHECK(report.columns == std::vector<std::string>{"step", "z", "empirical_fraction", "answer"});
    REQUIRE(report.rows.size() == 6);
    CHECK(report.rows[0][0] == "1");
    CHECK(report.rows[0][1].empty());  // the first query is at the empty prefix
    for (const auto& row : report.rows) {
        CHECK((row[3] == "YES" || row[3] == "NO"));
    }
}

TEST_CASE("samp-sep counts double per advice bit") {
    fs::path out = scratch_dir() / "samp.csv";
    REQUIRE(run_cli("samp-sep --n 3 --trials 500 --seed 4 --out " + out.string()) == 0);
    Report report = Report::parse(slurp(out));
    REQUIRE(report.rows.size() == 4);  // b = 0..3
    for (size_t b = 0; b < report.rows.size(); b++) {
        CHECK(report.rows[b][1] == std::to_string(b));
        CHECK(report.rows[b][2] == std::to_string(uint64_t(1) << b));
    }
}

TEST_CASE("postselect-demo rows agree with the stored table") {
    fs::path out = scratch_dir() / "post.csv";
    REQUIRE(run_cli("postselect-demo --n 5 --trials 20 --seed 6 --out " + out.string()) == 0);
    Report report = Report::parse(slurp(out));
    REQUIRE(report.rows.size() == 20);
    for (const auto& row : report.rows) {
        CHECK(row[3] == row[4]);  // bit == expected
    }
}

TEST_CASE("config files feed defaults and flags override them") {
    fs::path conf = scratch_dir() / "run.conf";
    {
        std::ofstream c(conf);
        c << "n=3\ntrials=150\nseed=21\n";
    }
    fs::path out = scratch_dir() / "conf.csv";
    REQUIRE(run_cli("hm-quantum --config " + conf.string() + " --out " + out.string()) == 0);
    Report from_config = Report::parse(slurp(out));
    CHECK(from_config.config_comment.find("n=3") != std::string::npos);
    CHECK(from_config.config_comment.find("trials=150") != std::string::npos);
    CHECK(from_config.config_comment.find("seed=21") != std::string::npos);

    REQUIRE(run_cli("hm-quantum --config " + conf.string() + " --n 2 --out " + out.string()) == 0);
    Report overridden = Report::parse(slurp(out));
    CHECK(overridden.config_comment.find("n=2") != std::string::npos);
    CHECK(overridden.config_comment.find("trials=150") != std::string::npos);
}
