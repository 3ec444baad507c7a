// Command-line front end: score pair files, generate synthetic campaigns,
// run benchmark directories and emit decision-rate curves.
//
// Exit codes: 0 success, 2 input error, 3 internal numeric failure.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scci/eval.hpp"
#include "scci/inference.hpp"
#include "scci/io.hpp"
#include "scci/synth.hpp"

namespace fs = std::filesystem;
using namespace scci;

namespace {

struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_finite(double value, const std::string& what) {
    if (!std::isfinite(value)) throw NumericFailure(what + " is not finite");
}

const char* pretty_direction(Direction d) {
    switch (d) {
        case Direction::XtoY: return "X->Y";
        case Direction::YtoX: return "Y->X";
        default: return "undecided";
    }
}

struct Options {
    std::uint64_t seed = 0;
    int precision = kDefaultPrecisionDigits;
    int column_x = 0;
    int column_y = 1;
    bool header = false;
};

CausalVerdict score_file(const fs::path& file, const Options& opt) {
    const auto cols = read_pair_columns(file, opt.column_x, opt.column_y, opt.header);
    const auto x = encode_tokens(cols.x);
    const auto y = encode_tokens(cols.y);
    const auto verdict = infer(x, y, opt.precision);
    require_finite(verdict.s_x_to_y, "score");
    require_finite(verdict.s_y_to_x, "score");
    return verdict;
}

int cmd_infer(const fs::path& file, const Options& opt) {
    const auto verdict = score_file(file, opt);
    std::printf("direction: %s\n", pretty_direction(verdict.direction));
    std::printf("s_xy: %.6f bits\n", verdict.s_x_to_y);
    std::printf("s_yx: %.6f bits\n", verdict.s_y_to_x);
    std::printf("delta: %.6f bits\n", verdict.delta);
    std::printf("confidence: %.6f bits\n", verdict.confidence);
    return 0;
}

int cmd_sc(const fs::path& file, const Options& opt) {
    const auto cols = read_pair_columns(file, opt.column_x, opt.column_x, opt.header);
    const double bits = stochastic_complexity(encode_tokens(cols.x), opt.precision);
    require_finite(bits, "stochastic complexity");
    std::printf("%.6f\n", bits);
    return 0;
}

int cmd_synth(const std::string& family_str, std::int64_t pairs, std::int64_t n,
              const fs::path& out_dir, const Options& opt) {
    const auto family = family_from_string(family_str);
    if (!family) throw std::runtime_error("unknown family: " + family_str);
    if (pairs < 1 || n < 1) throw std::runtime_error("need --pairs >= 1 and --n >= 1");

    fs::create_directories(out_dir);
    std::ofstream manifest(out_dir / "manifest.tsv");
    if (!manifest) throw std::runtime_error((out_dir / "manifest.tsv").string() + ": cannot write");
    manifest << "# pair_id\tground_truth\tseed\n";

    for (std::int64_t i = 0; i < pairs; ++i) {
        const auto rec = synthetic_pair(*family, opt.seed, i, n);
        const auto id = synthetic_pair_id(*family, i);
        write_pair_file(out_dir / (id + ".txt"), rec.raw_x, rec.raw_y);
        manifest << id << '\t' << to_string(rec.ground_truth) << '\t' << rec.seed << '\n';
    }
    if (!manifest) throw std::runtime_error("manifest write failed");
    std::fprintf(stderr, "wrote %" PRId64 " pairs to %s\n", pairs, out_dir.string().c_str());
    return 0;
}

int cmd_bench(const fs::path& dir, const fs::path& truth_file, const Options& opt) {
    const auto truths = read_truth_file(truth_file);
    std::string exclude;
    if (truth_file.has_parent_path() && fs::equivalent(truth_file.parent_path(), dir))
        exclude = truth_file.filename().string();

    const auto run = run_benchmark(list_pair_files(dir, exclude), truths, opt.precision,
                                   opt.column_x, opt.column_y, opt.header);
    for (const auto& msg : run.skipped) std::fprintf(stderr, "skipped %s\n", msg.c_str());
    if (run.results.empty()) throw std::runtime_error("no pairs scored");
    for (const auto& r : run.results) {
        require_finite(r.verdict.s_x_to_y, r.pair_id);
        require_finite(r.verdict.s_y_to_x, r.pair_id);
    }

    write_results_csv(std::cout, run.results);
    std::fprintf(stderr, "scored %zu pairs, accuracy %.4f\n", run.results.size(),
                 accuracy(run.results));
    return 0;
}

int cmd_rate(const std::string& results_path, const std::vector<double>& rates) {
    std::vector<EvalResult> results;
    if (results_path == "-") {
        results = read_results_csv(std::cin);
    } else {
        std::ifstream in(results_path);
        if (!in) throw std::runtime_error(results_path + ": cannot open");
        results = read_results_csv(in);
    }
    write_curve_csv(std::cout, decision_rate_curve(results, rates));
    return 0;
}

int cmd_profile(const std::vector<std::int64_t>& n_grid, const std::vector<std::int64_t>& m_grid,
                int repeats, const Options& opt) {
    write_profile_csv(std::cout, runtime_profile(n_grid, m_grid, opt.seed, repeats, opt.precision));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal direction between two discrete variables by comparing\n"
                 "multinomial NML code lengths of the two factorizations"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--seed", opt.seed, "master seed for synth/profile")->capture_default_str();
    app.add_option("--precision", opt.precision, "normalizing-sum precision in digits")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--x", opt.column_x, "cause column index")->capture_default_str();
    app.add_option("--y", opt.column_y, "effect column index")->capture_default_str();
    app.add_flag("--header", opt.header, "skip the first line of input files");

    std::string file;
    auto* sub_infer = app.add_subcommand("infer", "score a two-column pair file");
    sub_infer->fallthrough();
    sub_infer->add_option("file", file, "pair file")->required();

    auto* sub_sc = app.add_subcommand("sc", "stochastic complexity of one column");
    sub_sc->fallthrough();
    sub_sc->add_option("file", file, "input file")->required();

    std::string family = "uniform";
    std::int64_t pairs = 100;
    std::int64_t n = 1000;
    std::string out_dir;
    auto* sub_synth = app.add_subcommand("synth", "generate labeled cause-effect pairs");
    sub_synth->fallthrough();
    sub_synth->add_option("--family", family,
                          "uniform|binomial|geometric|hypergeometric|poisson|"
                          "negative_binomial|multinomial")
        ->required();
    sub_synth->add_option("--pairs", pairs, "number of pairs")->capture_default_str();
    sub_synth->add_option("--n", n, "sample length per pair")->capture_default_str();
    sub_synth->add_option("--out", out_dir, "output directory")->required();

    std::string bench_dir, truth_file;
    auto* sub_bench = app.add_subcommand("bench", "score a directory of pair files");
    sub_bench->fallthrough();
    sub_bench->add_option("--dir", bench_dir, "directory of pair files")->required();
    sub_bench->add_option("--truth", truth_file, "pair_id<TAB>direction metadata file")
        ->required();

    std::string results_path;
    std::vector<double> rates{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    auto* sub_rate = app.add_subcommand("rate", "decision-rate curve from a results csv");
    sub_rate->fallthrough();
    sub_rate->add_option("results", results_path, "results csv, or - for stdin")->required();
    sub_rate->add_option("--rates", rates, "comma-separated rates in (0,1]")
        ->delimiter(',')
        ->capture_default_str();

    std::vector<std::int64_t> n_grid{1000, 10000, 100000};
    std::vector<std::int64_t> m_grid{2, 20};
    int repeats = 3;
    auto* sub_profile = app.add_subcommand("profile", "runtime over an (n, m) grid");
    sub_profile->fallthrough();
    sub_profile->add_option("--n-grid", n_grid, "sample sizes")->delimiter(',')->capture_default_str();
    sub_profile->add_option("--m-grid", m_grid, "domain sizes")->delimiter(',')->capture_default_str();
    sub_profile->add_option("--repeats", repeats, "timing repetitions per grid point")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_infer->parsed()) return cmd_infer(file, opt);
        if (sub_sc->parsed()) return cmd_sc(file, opt);
        if (sub_synth->parsed()) return cmd_synth(family, pairs, n, out_dir, opt);
        if (sub_bench->parsed()) return cmd_bench(bench_dir, truth_file, opt);
        if (sub_rate->parsed()) return cmd_rate(results_path, rates);
        return cmd_profile(n_grid, m_grid, repeats, opt);
    } catch (const NumericFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
