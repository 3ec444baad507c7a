#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace scci {

// A univariate discrete sample: symbol indices in [0, domain_size). The domain
// size may exceed the number of symbols actually present (unobserved categories
// are allowed), never the other way around.
struct DiscreteSample {
    std::vector<std::int32_t> values;
    std::int32_t domain_size = 0;

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

inline void validate(const DiscreteSample& sample) {
    if (sample.domain_size < 1)
        throw std::invalid_argument("DiscreteSample: domain size must be >= 1");
    if (sample.values.empty())
        throw std::invalid_argument("DiscreteSample: sample must be non-empty");
    for (std::int32_t v : sample.values) {
        if (v < 0 || v >= sample.domain_size)
            throw std::invalid_argument("DiscreteSample: value outside [0, domain_size)");
    }
}

inline DiscreteSample make_sample(std::vector<std::int32_t> values, std::int32_t domain_size) {
    DiscreteSample sample{std::move(values), domain_size};
    validate(sample);
    return sample;
}

// Per-symbol counts; sum of counts equals total.
struct Histogram {
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;
};

inline Histogram histogram(const DiscreteSample& sample) {
    Histogram hist;
    hist.counts.assign(static_cast<std::size_t>(sample.domain_size), 0);
    for (std::int32_t v : sample.values) ++hist.counts[static_cast<std::size_t>(v)];
    hist.total = sample.size();
    return hist;
}

// Encodes arbitrary integers to contiguous symbol indices. Levels are sorted,
// so the mapping depends only on the set of values, not their order.
struct EncodedColumn {
    DiscreteSample sample;
    std::vector<std::int64_t> levels;  // symbol index -> raw value
};

inline EncodedColumn encode_integers(const std::vector<std::int64_t>& raw) {
    if (raw.empty()) throw std::invalid_argument("encode_integers: empty column");
    std::vector<std::int64_t> levels(raw);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    EncodedColumn col;
    col.sample.values.reserve(raw.size());
    for (std::int64_t v : raw) {
        const auto it = std::lower_bound(levels.begin(), levels.end(), v);
        col.sample.values.push_back(static_cast<std::int32_t>(it - levels.begin()));
    }
    col.sample.domain_size = static_cast<std::int32_t>(levels.size());
    col.levels = std::move(levels);
    return col;
}

}  // namespace scci
