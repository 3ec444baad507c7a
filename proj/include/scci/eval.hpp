#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "scci/inference.hpp"
#include "scci/io.hpp"
#include "scci/synth.hpp"

// Experiment campaigns: per-family synthetic runs, decision-rate curves,
// benchmark pair scoring and runtime grids. Undecided verdicts earn half
// credit, the expectation of deciding them by coin flip, so campaign numbers
// are reproducible.

namespace scci {

struct EvalResult {
    std::string pair_id;
    Direction ground_truth = Direction::XtoY;
    CausalVerdict verdict;
    double elapsed_s = 0.0;
};

inline double accuracy(const std::vector<EvalResult>& results) {
    if (results.empty()) throw std::invalid_argument("accuracy: empty result set");
    double credit = 0.0;
    for (const auto& r : results) {
        if (r.verdict.direction == Direction::Undecided)
            credit += 0.5;
        else if (r.verdict.direction == r.ground_truth)
            credit += 1.0;
    }
    return credit / static_cast<double>(results.size());
}

struct DecisionRateCurve {
    std::vector<std::pair<double, double>> points;  // (rate, accuracy)
};

// Accuracy over the top ceil(rate * total) results by confidence. Ordering is
// confidence descending with pair_id as the tie break, so the curve depends
// only on the result set, not on input order.
inline DecisionRateCurve decision_rate_curve(const std::vector<EvalResult>& results,
                                             std::vector<double> rates) {
    if (results.empty()) throw std::invalid_argument("decision_rate_curve: empty result set");
    for (double rate : rates) {
        if (!(rate > 0.0) || rate > 1.0)
            throw std::invalid_argument("decision_rate_curve: rates must lie in (0, 1]");
    }
    std::sort(rates.begin(), rates.end());
    rates.erase(std::unique(rates.begin(), rates.end()), rates.end());

    std::vector<std::size_t> order(results.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (results[a].verdict.confidence != results[b].verdict.confidence)
            return results[a].verdict.confidence > results[b].verdict.confidence;
        return results[a].pair_id < results[b].pair_id;
    });

    const auto total = static_cast<double>(results.size());
    DecisionRateCurve curve;
    curve.points.reserve(rates.size());
    for (double rate : rates) {
        auto k = static_cast<std::size_t>(std::ceil(rate * total - 1e-9));
        k = std::clamp<std::size_t>(k, 1, results.size());
        std::vector<EvalResult> top;
        top.reserve(k);
        for (std::size_t i = 0; i < k; ++i) top.push_back(results[order[i]]);
        curve.points.emplace_back(rate, accuracy(top));
    }
    return curve;
}

inline std::string synthetic_pair_id(Family family, std::int64_t index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s-%04lld", family_name(family),
                  static_cast<long long>(index));
    return buf;
}

// The pair at a given campaign index: class parameters and data come from
// separate per-pair streams derived off the master seed.
inline PairRecord synthetic_pair(Family family, std::uint64_t master_seed, std::int64_t index,
                                 std::int64_t n) {
    const auto idx = static_cast<std::uint64_t>(index);
    Rng class_rng(derive_seed(master_seed, idx, 0));
    const auto cls = random_cause_class(family, class_rng);
    return generate_pair(cls, n, derive_seed(master_seed, idx, 1));
}

// One labeled pair per index, verdict from infer. Deterministic end to end.
inline std::vector<EvalResult> run_synthetic_campaign(Family family, std::int64_t pairs,
                                                      std::int64_t n, std::uint64_t master_seed,
                                                      int precision_digits = kDefaultPrecisionDigits) {
    if (pairs < 1 || n < 1)
        throw std::invalid_argument("run_synthetic_campaign: need pairs >= 1 and n >= 1");

    std::vector<EvalResult> results;
    results.reserve(static_cast<std::size_t>(pairs));
    for (std::int64_t i = 0; i < pairs; ++i) {
        const auto rec = synthetic_pair(family, master_seed, i, n);

        const auto t0 = std::chrono::steady_clock::now();
        const auto verdict = infer(rec.x, rec.y, precision_digits);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;

        results.push_back({synthetic_pair_id(family, i), rec.ground_truth, verdict, dt.count()});
    }
    return results;
}

struct BenchmarkRun {
    std::vector<EvalResult> results;
    std::vector<std::string> skipped;  // "file: reason"
};

// Scores each pair file against its ground truth. Files that fail to parse or
// lack a truth entry are skipped and reported, never fatal.
inline BenchmarkRun run_benchmark(const std::vector<std::filesystem::path>& pair_files,
                                  const std::map<std::string, Direction>& ground_truths,
                                  int precision_digits = kDefaultPrecisionDigits,
                                  int column_x = 0, int column_y = 1, bool skip_header = false) {
    BenchmarkRun run;
    for (const auto& path : pair_files) {
        const std::string pair_id = path.stem().string();
        const auto truth = ground_truths.find(pair_id);
        if (truth == ground_truths.end()) {
            run.skipped.push_back(path.string() + ": no ground-truth entry");
            continue;
        }
        try {
            const auto cols = read_pair_columns(path, column_x, column_y, skip_header);
            const auto x = encode_tokens(cols.x);
            const auto y = encode_tokens(cols.y);

            const auto t0 = std::chrono::steady_clock::now();
            const auto verdict = infer(x, y, precision_digits);
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;

            run.results.push_back({pair_id, truth->second, verdict, dt.count()});
        } catch (const std::exception& e) {
            run.skipped.push_back(path.string() + ": " + e.what());
        }
    }
    return run;
}

struct ProfilePoint {
    std::int64_t n = 0;
    std::int64_t m = 0;
    double seconds = 0.0;
};

// Wall-clock cost of infer on independent uniform columns over every grid
// point. Runs serially; `repeats` averages out timer noise.
inline std::vector<ProfilePoint> runtime_profile(const std::vector<std::int64_t>& n_grid,
                                                 const std::vector<std::int64_t>& m_grid,
                                                 std::uint64_t seed, int repeats = 1,
                                                 int precision_digits = kDefaultPrecisionDigits) {
    if (n_grid.empty() || m_grid.empty())
        throw std::invalid_argument("runtime_profile: empty grid");
    if (repeats < 1) throw std::invalid_argument("runtime_profile: repeats must be >= 1");

    std::vector<ProfilePoint> table;
    std::uint64_t point = 0;
    for (std::int64_t n : n_grid) {
        for (std::int64_t m : m_grid) {
            Rng rng(derive_seed(seed, point++, 2));
            std::vector<std::int32_t> xs, ys;
            xs.reserve(static_cast<std::size_t>(n));
            ys.reserve(static_cast<std::size_t>(n));
            for (std::int64_t i = 0; i < n; ++i) {
                xs.push_back(static_cast<std::int32_t>(uniform_int(rng, 0, m - 1)));
                ys.push_back(static_cast<std::int32_t>(uniform_int(rng, 0, m - 1)));
            }
            const auto x = make_sample(std::move(xs), static_cast<std::int32_t>(m));
            const auto y = make_sample(std::move(ys), static_cast<std::int32_t>(m));

            const auto t0 = std::chrono::steady_clock::now();
            for (int r = 0; r < repeats; ++r) {
                volatile double sink = infer(x, y, precision_digits).delta;
                (void)sink;
            }
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            table.push_back({n, m, dt.count() / repeats});
        }
    }
    return table;
}

// --- CSV interfaces -------------------------------------------------------

inline std::string format_fixed(double value, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

inline constexpr const char* kResultsCsvHeader =
    "pair_id,ground_truth,direction,s_xy,s_yx,delta,elapsed_s";

inline void write_results_csv(std::ostream& out, const std::vector<EvalResult>& results) {
    out << kResultsCsvHeader << '\n';
    for (const auto& r : results) {
        out << r.pair_id << ',' << to_string(r.ground_truth) << ','
            << to_string(r.verdict.direction) << ',' << format_fixed(r.verdict.s_x_to_y) << ','
            << format_fixed(r.verdict.s_y_to_x) << ',' << format_fixed(r.verdict.delta) << ','
            << format_fixed(r.elapsed_s) << '\n';
    }
}

inline std::vector<EvalResult> read_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("results csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kResultsCsvHeader)
        throw std::runtime_error("results csv: unexpected header: " + line);

    std::vector<EvalResult> results;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::istringstream fin(line);
        std::string field;
        while (std::getline(fin, field, ',')) fields.push_back(field);
        if (fields.size() != 7)
            throw std::runtime_error("results csv line " + std::to_string(line_no) +
                                     ": expected 7 fields");
        const auto truth = direction_from_string(fields[1]);
        const auto dir = direction_from_string(fields[2]);
        if (!truth || !dir)
            throw std::runtime_error("results csv line " + std::to_string(line_no) +
                                     ": bad direction");
        EvalResult r;
        r.pair_id = fields[0];
        r.ground_truth = *truth;
        r.verdict.s_x_to_y = std::stod(fields[3]);
        r.verdict.s_y_to_x = std::stod(fields[4]);
        r.verdict.delta = std::stod(fields[5]);
        r.verdict.direction = *dir;
        r.verdict.confidence = std::abs(r.verdict.delta);
        r.elapsed_s = std::stod(fields[6]);
        results.push_back(std::move(r));
    }
    return results;
}

inline void write_curve_csv(std::ostream& out, const DecisionRateCurve& curve) {
    out << "rate,accuracy\n";
    for (const auto& [rate, acc] : curve.points)
        out << format_fixed(rate) << ',' << format_fixed(acc) << '\n';
}

inline void write_profile_csv(std::ostream& out, const std::vector<ProfilePoint>& table) {
    out << "n,m,seconds\n";
    for (const auto& p : table)
        out << p.n << ',' << p.m << ',' << format_fixed(p.seconds) << '\n';
}

}  // namespace scci
