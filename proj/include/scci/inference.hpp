#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string_view>
#include <utility>

#include "scci/complexity.hpp"
#include "scci/sample.hpp"

namespace scci {

enum class Direction { XtoY, YtoX, Undecided };

inline const char* to_string(Direction d) {
    switch (d) {
        case Direction::XtoY: return "XtoY";
        case Direction::YtoX: return "YtoX";
        default: return "Undecided";
    }
}

inline std::optional<Direction> direction_from_string(std::string_view s) {
    if (s == "XtoY") return Direction::XtoY;
    if (s == "YtoX") return Direction::YtoX;
    if (s == "Undecided") return Direction::Undecided;
    return std::nullopt;
}

// Score gaps below this count as a tie. The rule itself compares exact values;
// the epsilon only absorbs floating-point noise, far below any real gap.
inline constexpr double kTieEpsilonBits = 1e-9;

// (S(X) + S(Y|X), S(Y) + S(X|Y)) in bits.
inline std::pair<double, double> directed_scores(const DiscreteSample& x, const DiscreteSample& y,
                                                 int precision_digits = kDefaultPrecisionDigits) {
    if (x.size() != y.size())
        throw std::invalid_argument("directed_scores: column lengths differ");
    const double s_x = stochastic_complexity(x, precision_digits);
    const double s_y = stochastic_complexity(y, precision_digits);
    const double s_y_given_x = conditional_stochastic_complexity(y, x, precision_digits);
    const double s_x_given_y = conditional_stochastic_complexity(x, y, precision_digits);
    return {s_x + s_y_given_x, s_y + s_x_given_y};
}

struct CausalVerdict {
    double s_x_to_y = 0.0;
    double s_y_to_x = 0.0;
    double delta = 0.0;  // s_x_to_y - s_y_to_x
    Direction direction = Direction::Undecided;
    double confidence = 0.0;  // |delta|
};

// The direction whose factorization compresses better wins; equal totals stay
// undecided. Deterministic, no tie-breaking randomness.
inline CausalVerdict infer(const DiscreteSample& x, const DiscreteSample& y,
                           int precision_digits = kDefaultPrecisionDigits) {
    const auto [s_xy, s_yx] = directed_scores(x, y, precision_digits);
    const double delta = s_xy - s_yx;
    Direction direction = Direction::Undecided;
    if (delta < -kTieEpsilonBits)
        direction = Direction::XtoY;
    else if (delta > kTieEpsilonBits)
        direction = Direction::YtoX;
    return {s_xy, s_yx, delta, direction, std::abs(delta)};
}

}  // namespace scci
