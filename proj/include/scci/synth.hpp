#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "scci/inference.hpp"
#include "scci/random.hpp"
#include "scci/sample.hpp"

// Cause-effect pair generator: the cause is drawn i.i.d. from one of seven
// discrete families with randomized parameters, the effect is f(X) + N for a
// random integer table f and uniform integer noise N independent of X.
//
// Everything is reproducible from a single 64-bit seed. The draw order is
// fixed: family parameters (in declaration order), then the n cause values,
// then one f value per distinct cause symbol in ascending symbol order, then
// the noise half-width t, then the n noise values. Samplers are inverse-CDF
// walks (urn draws for the hypergeometric, a geometric sum for the negative
// binomial), so no platform-dependent distribution code is involved.

namespace scci {

enum class Family {
    Uniform,
    Binomial,
    Geometric,
    Hypergeometric,
    Poisson,
    NegativeBinomial,
    Multinomial,
};

inline constexpr std::array<Family, 7> kAllFamilies = {
    Family::Uniform,        Family::Binomial, Family::Geometric,
    Family::Hypergeometric, Family::Poisson,  Family::NegativeBinomial,
    Family::Multinomial,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Uniform: return "uniform";
        case Family::Binomial: return "binomial";
        case Family::Geometric: return "geometric";
        case Family::Hypergeometric: return "hypergeometric";
        case Family::Poisson: return "poisson";
        case Family::NegativeBinomial: return "negative_binomial";
        default: return "multinomial";
    }
}

inline std::optional<Family> family_from_string(std::string_view s) {
    for (Family f : kAllFamilies)
        if (s == family_name(f)) return f;
    return std::nullopt;
}

struct UniformParams { std::int64_t limit = 1; };                       // values 1..limit
struct BinomialParams { std::int64_t trials = 1; double p = 0.5; };
struct GeometricParams { double p = 0.5; };                             // trials to first success
struct HypergeometricParams { std::int64_t good = 1, bad = 1, draws = 1; };
struct PoissonParams { double lambda = 1.0; };
struct NegativeBinomialParams { std::int64_t successes = 1; double p = 0.5; };
struct MultinomialParams { std::vector<double> theta; };

using CauseParams = std::variant<UniformParams, BinomialParams, GeometricParams,
                                 HypergeometricParams, PoissonParams,
                                 NegativeBinomialParams, MultinomialParams>;

struct CauseClass {
    CauseParams params;

    Family family() const { return static_cast<Family>(params.index()); }
};

// Parameter ranges: L in {1..10}; trial counts in {1..40}; M, K in {1..40} with
// N in {1..min(41, M+K)}; p in [0.1, 0.9]; lambda in [1, 10]; theta uniform on
// a simplex of {2..10} cells (gaps of sorted uniforms).
inline CauseClass random_cause_class(Family family, Rng& rng) {
    switch (family) {
        case Family::Uniform:
            return {UniformParams{uniform_int(rng, 1, 10)}};
        case Family::Binomial: {
            const auto trials = uniform_int(rng, 1, 40);
            return {BinomialParams{trials, uniform_real(rng, 0.1, 0.9)}};
        }
        case Family::Geometric:
            return {GeometricParams{uniform_real(rng, 0.1, 0.9)}};
        case Family::Hypergeometric: {
            const auto good = uniform_int(rng, 1, 40);
            const auto bad = uniform_int(rng, 1, 40);
            const auto draws = uniform_int(rng, 1, std::min<std::int64_t>(41, good + bad));
            return {HypergeometricParams{good, bad, draws}};
        }
        case Family::Poisson:
            return {PoissonParams{uniform_real(rng, 1.0, 10.0)}};
        case Family::NegativeBinomial: {
            const auto successes = uniform_int(rng, 1, 40);
            return {NegativeBinomialParams{successes, uniform_real(rng, 0.1, 0.9)}};
        }
        default: {
            const auto cells = uniform_int(rng, 2, 10);
            std::vector<double> cuts;
            cuts.reserve(static_cast<std::size_t>(cells) + 1);
            for (std::int64_t i = 0; i + 1 < cells; ++i) cuts.push_back(uniform_unit(rng));
            cuts.push_back(0.0);
            cuts.push_back(1.0);
            std::sort(cuts.begin(), cuts.end());
            std::vector<double> theta(static_cast<std::size_t>(cells));
            for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = cuts[i + 1] - cuts[i];
            return {MultinomialParams{std::move(theta)}};
        }
    }
}

namespace detail {

inline std::int64_t draw_binomial(Rng& rng, std::int64_t trials, double p) {
    const double u = uniform_unit(rng);
    const double q = 1.0 - p;
    double pmf = std::pow(q, static_cast<double>(trials));
    double cum = pmf;
    std::int64_t k = 0;
    while (u > cum && k < trials) {
        pmf *= static_cast<double>(trials - k) / static_cast<double>(k + 1) * (p / q);
        ++k;
        cum += pmf;
    }
    return k;
}

inline std::int64_t draw_geometric(Rng& rng, double p) {
    const double u = uniform_unit(rng);
    const auto k = static_cast<std::int64_t>(std::ceil(std::log1p(-u) / std::log1p(-p)));
    return std::max<std::int64_t>(1, k);
}

inline std::int64_t draw_hypergeometric(Rng& rng, std::int64_t good, std::int64_t bad,
                                        std::int64_t draws) {
    std::int64_t g = good, b = bad, hits = 0;
    for (std::int64_t i = 0; i < draws; ++i) {
        if (uniform_unit(rng) * static_cast<double>(g + b) < static_cast<double>(g)) {
            --g;
            ++hits;
        } else {
            --b;
        }
    }
    return hits;
}

inline std::int64_t draw_poisson(Rng& rng, double lambda) {
    const double u = uniform_unit(rng);
    const auto cutoff =
        static_cast<std::int64_t>(lambda + 12.0 * std::sqrt(lambda) + 30.0);
    double pmf = std::exp(-lambda);
    double cum = pmf;
    std::int64_t k = 0;
    while (u > cum && k < cutoff) {
        pmf *= lambda / static_cast<double>(k + 1);
        ++k;
        cum += pmf;
    }
    return k;
}

inline std::int64_t draw_categorical(Rng& rng, const std::vector<double>& theta) {
    const double u = uniform_unit(rng);
    double cum = 0.0;
    for (std::size_t j = 0; j + 1 < theta.size(); ++j) {
        cum += theta[j];
        if (u < cum) return static_cast<std::int64_t>(j);
    }
    return static_cast<std::int64_t>(theta.size()) - 1;
}

}  // namespace detail

inline std::vector<std::int64_t> sample_cause(const CauseClass& cls, std::int64_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_cause: need n >= 1");
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t v = std::visit(
            [&](const auto& p) -> std::int64_t {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, UniformParams>) {
                    return uniform_int(rng, 1, p.limit);
                } else if constexpr (std::is_same_v<P, BinomialParams>) {
                    return detail::draw_binomial(rng, p.trials, p.p);
                } else if constexpr (std::is_same_v<P, GeometricParams>) {
                    return detail::draw_geometric(rng, p.p);
                } else if constexpr (std::is_same_v<P, HypergeometricParams>) {
                    return detail::draw_hypergeometric(rng, p.good, p.bad, p.draws);
                } else if constexpr (std::is_same_v<P, PoissonParams>) {
                    return detail::draw_poisson(rng, p.lambda);
                } else if constexpr (std::is_same_v<P, NegativeBinomialParams>) {
                    std::int64_t total = 0;
                    for (std::int64_t s = 0; s < p.successes; ++s)
                        total += detail::draw_geometric(rng, p.p);
                    return total;
                } else {
                    return detail::draw_categorical(rng, p.theta);
                }
            },
            cls.params);
        out.push_back(v);
    }
    return out;
}

// The mechanism of the additive noise model: a per-symbol function table and
// the noise half-width.
struct AnmSpec {
    std::map<std::int64_t, std::int64_t> f;  // cause symbol -> f value in [-7, 7]
    std::int64_t noise_halfwidth = 1;        // t in {1..7}, noise uniform on [-t, t]
};

inline AnmSpec draw_anm_spec(const std::vector<std::int64_t>& cause_symbols, Rng& rng) {
    AnmSpec spec;
    for (std::int64_t symbol : cause_symbols) spec.f[symbol] = uniform_int(rng, -7, 7);
    spec.noise_halfwidth = uniform_int(rng, 1, 7);
    return spec;
}

// A generated, labeled cause-effect pair. Columns are kept both raw and
// re-encoded to contiguous symbols; levels decode one back to the other.
struct PairRecord {
    DiscreteSample x, y;
    std::vector<std::int64_t> x_levels, y_levels;
    std::vector<std::int64_t> raw_x, raw_y;
    Direction ground_truth = Direction::XtoY;
    CauseClass cause;
    AnmSpec anm;
    std::uint64_t seed = 0;
};

inline PairRecord generate_pair(const CauseClass& cls, std::int64_t n, std::uint64_t seed) {
    Rng rng(seed);

    PairRecord rec;
    rec.cause = cls;
    rec.seed = seed;
    rec.raw_x = sample_cause(cls, n, rng);

    std::vector<std::int64_t> symbols(rec.raw_x);
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    rec.anm = draw_anm_spec(symbols, rng);

    rec.raw_y.reserve(rec.raw_x.size());
    const std::int64_t t = rec.anm.noise_halfwidth;
    for (std::int64_t xv : rec.raw_x)
        rec.raw_y.push_back(rec.anm.f.at(xv) + uniform_int(rng, -t, t));

    auto ex = encode_integers(rec.raw_x);
    auto ey = encode_integers(rec.raw_y);
    rec.x = std::move(ex.sample);
    rec.x_levels = std::move(ex.levels);
    rec.y = std::move(ey.sample);
    rec.y_levels = std::move(ey.levels);
    return rec;
}

}  // namespace scci
