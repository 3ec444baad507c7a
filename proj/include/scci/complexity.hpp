#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "scci/sample.hpp"

// Normalized maximum likelihood (NML) code lengths for the multinomial model
// class over m symbols. The stochastic complexity of a sample splits into two
// parts,
//
//   S(X^n) = n log2 n - sum_j h_j log2 h_j  +  log2 R(m, n) ,
//
// where h_j are the symbol counts and R(m, n) is the normalizing sum of the
// maximum-likelihood probabilities over all datasets of length n:
//
//   R(m, n) = sum_{h_1+...+h_m = n} n! / (h_1! ... h_m!) prod_j (h_j / n)^h_j .
//
// R is evaluated without enumeration: the two-symbol sum collapses to the
// falling-factorial series sum_{k=0}^{n} n! / ((n-k)! n^k), whose terms decay
// like exp(-k^2 / 2n), so d-digit precision needs O(sqrt(d n)) terms; higher
// domain sizes follow from the recurrence
//
//   R(m+2, n) = R(m+1, n) + (n / m) R(m, n) ,
//
// carried in the log domain so nothing overflows (log2 R grows roughly like
// (m/2) log2 n, far past double range in linear scale for large m).
// All code lengths are in bits.

namespace scci {

inline constexpr int kDefaultPrecisionDigits = 10;

// log2 R(m, n) plus the inputs it was computed for.
struct LogNormalizer {
    std::int64_t domain_size = 0;
    std::int64_t sample_size = 0;
    double log2_r = 0.0;
};

// log2(2^a + 2^b), stable for any magnitudes.
inline double log2_add(double a, double b) {
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp2(b - a)) / std::numbers::ln2;
}

// Maximum-likelihood part of the code length: n log2 n - sum_j h_j log2 h_j.
// Zero counts contribute nothing (0 log 0 = 0); a single-cell histogram costs
// exactly zero bits.
inline double ml_codelength(const Histogram& hist) {
    if (hist.total < 1) throw std::invalid_argument("ml_codelength: empty histogram");
    const double n = static_cast<double>(hist.total);
    double sum = 0.0;
    for (std::int64_t h : hist.counts) {
        if (h > 1) sum += static_cast<double>(h) * std::log2(static_cast<double>(h));
    }
    return std::max(0.0, n * std::log2(n) - sum);
}

// R(2, n) as the truncated series sum_{k=0}^{n} n!/((n-k)! n^k). Terms live in
// [0, 1] and the total is O(sqrt(n)), so plain double summation is safe for
// any n. Truncation uses the geometric tail bound sum_{j>k} b_j <= b_k * n/k.
inline double binomial_normalizing_sum(std::int64_t n, int precision_digits) {
    const double nd = static_cast<double>(n);
    const double tol = 0.5 * std::pow(10.0, -precision_digits - 2);
    double sum = 1.0;
    double term = 1.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        term *= (nd - static_cast<double>(k - 1)) / nd;
        sum += term;
        if (term * (nd / static_cast<double>(k)) < tol * sum) break;
    }
    return sum;
}

// log2 R(m, n) for the multinomial class: series base case plus the log-domain
// recurrence. Costs O(sqrt(precision_digits * n) + m).
inline LogNormalizer normalizing_sum(std::int64_t m, std::int64_t n,
                                     int precision_digits = kDefaultPrecisionDigits) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("normalizing_sum: need m >= 1 and n >= 1");
    if (precision_digits < 1)
        throw std::invalid_argument("normalizing_sum: precision must be >= 1 digit");

    double log2_r = 0.0;  // R(1, n) = 1
    if (m >= 2) {
        double prev = 0.0;
        double cur = std::log2(binomial_normalizing_sum(n, precision_digits));
        const double log2_n = std::log2(static_cast<double>(n));
        for (std::int64_t k = 1; k + 2 <= m; ++k) {
            const double next = log2_add(cur, log2_n - std::log2(static_cast<double>(k)) + prev);
            prev = cur;
            cur = next;
        }
        log2_r = cur;
    }
    return {m, n, log2_r};
}

// Reference evaluation of log2 R(m, n) by enumerating every composition
// h_1 + ... + h_m = n with its exact multinomial coefficient. Exponential in m,
// so inputs are capped; this exists to check the fast path against, not to use.
inline LogNormalizer normalizing_sum_oracle(std::int64_t m, std::int64_t n) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("normalizing_sum_oracle: need m >= 1 and n >= 1");
    if (m > 8 || n > 12)
        throw std::domain_error("normalizing_sum_oracle: enumeration bound exceeded (m <= 8, n <= 12)");

    std::vector<double> factorial(static_cast<std::size_t>(n) + 1, 1.0);
    for (std::int64_t k = 2; k <= n; ++k)
        factorial[static_cast<std::size_t>(k)] =
            factorial[static_cast<std::size_t>(k - 1)] * static_cast<double>(k);

    const double nd = static_cast<double>(n);
    double total = 0.0;
    std::vector<std::int64_t> h(static_cast<std::size_t>(m), 0);

    auto enumerate = [&](auto&& self, std::size_t cell, std::int64_t remaining) -> void {
        if (cell + 1 == h.size()) {
            h[cell] = remaining;
            double coeff = factorial[static_cast<std::size_t>(n)];
            double prob = 1.0;
            for (std::int64_t hj : h) {
                coeff /= factorial[static_cast<std::size_t>(hj)];
                if (hj > 0) prob *= std::pow(static_cast<double>(hj) / nd, static_cast<double>(hj));
            }
            total += coeff * prob;
            return;
        }
        for (std::int64_t v = 0; v <= remaining; ++v) {
            h[cell] = v;
            self(self, cell + 1, remaining - v);
        }
    };
    enumerate(enumerate, 0, n);

    return {m, n, std::log2(total)};
}

// Stochastic complexity of a sample under the multinomial class of its domain.
inline double stochastic_complexity(const DiscreteSample& sample,
                                    int precision_digits = kDefaultPrecisionDigits) {
    const Histogram hist = histogram(sample);
    return ml_codelength(hist) +
           normalizing_sum(sample.domain_size, sample.size(), precision_digits).log2_r;
}

// Conditional stochastic complexity: the sum over observed condition values x
// of S(target restricted to condition == x), every slice scored against the
// full target domain so the per-slice model class stays fixed. One grouping
// pass plus per-slice histogram work keeps this O(n + m_cond * m_target).
inline double conditional_stochastic_complexity(const DiscreteSample& target,
                                                const DiscreteSample& condition,
                                                int precision_digits = kDefaultPrecisionDigits) {
    if (target.size() != condition.size())
        throw std::invalid_argument("conditional_stochastic_complexity: column lengths differ");
    if (target.domain_size < 1 || condition.domain_size < 1)
        throw std::invalid_argument("conditional_stochastic_complexity: empty domain");

    const std::size_t n = target.values.size();
    const auto m_cond = static_cast<std::size_t>(condition.domain_size);
    const auto m_target = static_cast<std::size_t>(target.domain_size);

    std::vector<std::int64_t> slice_size(m_cond, 0);
    for (std::int32_t x : condition.values) ++slice_size[static_cast<std::size_t>(x)];

    std::vector<std::size_t> start(m_cond + 1, 0);
    for (std::size_t j = 0; j < m_cond; ++j)
        start[j + 1] = start[j] + static_cast<std::size_t>(slice_size[j]);

    std::vector<std::int32_t> grouped(n);
    {
        std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
        for (std::size_t i = 0; i < n; ++i)
            grouped[cursor[static_cast<std::size_t>(condition.values[i])]++] = target.values[i];
    }

    std::vector<std::int64_t> counts(m_target, 0);
    std::vector<std::int32_t> touched;
    touched.reserve(m_target);
    std::unordered_map<std::int64_t, double> regret_by_size;  // log2 R(m_target, c)

    double total = 0.0;
    for (std::size_t x = 0; x < m_cond; ++x) {
        const std::int64_t c = slice_size[x];
        if (c == 0) continue;

        for (std::size_t i = start[x]; i < start[x + 1]; ++i) {
            const auto v = static_cast<std::size_t>(grouped[i]);
            if (counts[v]++ == 0) touched.push_back(grouped[i]);
        }
        double sum = 0.0;
        for (std::int32_t v : touched) {
            const auto h = counts[static_cast<std::size_t>(v)];
            if (h > 1) sum += static_cast<double>(h) * std::log2(static_cast<double>(h));
        }
        const double ml =
            std::max(0.0, static_cast<double>(c) * std::log2(static_cast<double>(c)) - sum);

        auto [it, fresh] = regret_by_size.try_emplace(c, 0.0);
        if (fresh)
            it->second = normalizing_sum(static_cast<std::int64_t>(m_target), c, precision_digits).log2_r;
        total += ml + it->second;

        for (std::int32_t v : touched) counts[static_cast<std::size_t>(v)] = 0;
        touched.clear();
    }
    return total;
}

}  // namespace scci
