#pragma once

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "explab/base_space.hpp"
#include "explab/errors.hpp"

namespace explab {

struct ConstantTime {
    double c = 1.0;
};

/// T(x) = 1/x.
struct ReciprocalTime {};

/// T(x) = 1 + x^2.
struct QuadraticTime {};

/// T(x) = 1 + a sin(2 pi x).
struct SinusoidalTime {
    double amplitude = 0.0;
};

/// Knots interpolated linearly, value `fill` off the knot support. The end
/// knots are expected to match `fill` where segments meet the default region.
struct PiecewiseLinearTime {
    std::vector<double> pos; // strictly increasing
    std::vector<double> val;
    double fill = 1.0;
};

using ReturnTime =
    std::variant<ConstantTime, ReciprocalTime, QuadraticTime, SinusoidalTime, PiecewiseLinearTime>;

inline double eval_time(const ReturnTime& t, double x) {
    if (const auto* c = std::get_if<ConstantTime>(&t)) return c->c;
    if (std::holds_alternative<ReciprocalTime>(t)) return 1.0 / x;
    if (std::holds_alternative<QuadraticTime>(t)) return 1.0 + x * x;
    if (const auto* s = std::get_if<SinusoidalTime>(&t))
        return 1.0 + s->amplitude * std::sin(2.0 * std::numbers::pi * x);
    const auto& pl = std::get<PiecewiseLinearTime>(t);
    if (pl.pos.empty() || x < pl.pos.front() || x > pl.pos.back()) return pl.fill;
    auto it = std::upper_bound(pl.pos.begin(), pl.pos.end(), x);
    std::size_t i = static_cast<std::size_t>(it - pl.pos.begin());
    if (i == pl.pos.size()) return pl.val.back();
    if (i == 0) return pl.val.front();
    const double x0 = pl.pos[i - 1], x1 = pl.pos[i];
    if (x == x0) return pl.val[i - 1]; // exact knot hit
    const double s = (x - x0) / (x1 - x0);
    return pl.val[i - 1] + s * (pl.val[i] - pl.val[i - 1]);
}

inline void validate_return_time(const ReturnTime& t) {
    if (const auto* pl = std::get_if<PiecewiseLinearTime>(&t)) {
        if (pl->pos.size() != pl->val.size())
            throw ParameterError("piecewise-linear time: knot positions/values size mismatch");
        for (std::size_t i = 1; i < pl->pos.size(); ++i)
            if (!(pl->pos[i - 1] < pl->pos[i]))
                throw ParameterError("piecewise-linear time: knots must be strictly increasing");
    }
    if (const auto* c = std::get_if<ConstantTime>(&t)) {
        if (!(c->c > 0.0)) throw ParameterError("constant return time must be positive");
    }
}

/// Strict positivity audit on a grid plus all knots.
inline void check_time_positive(const ReturnTime& t, const BaseSpace& base, std::size_t grid_n = 10000) {
    for (double x : base_grid(base, grid_n))
        if (!(eval_time(t, x) > 0.0))
            throw ParameterError("return time not strictly positive on the base");
    if (const auto* pl = std::get_if<PiecewiseLinearTime>(&t))
        for (double v : pl->val)
            if (!(v > 0.0)) throw ParameterError("return time knot value not positive");
}

/// Minimum of T over the audit grid and knots (used for default thresholds).
inline double min_time_on_grid(const ReturnTime& t, const BaseSpace& base, std::size_t grid_n = 10000) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : base_grid(base, grid_n)) m = std::min(m, eval_time(t, x));
    if (const auto* pl = std::get_if<PiecewiseLinearTime>(&t))
        for (double v : pl->val) m = std::min(m, v);
    return m;
}

} // namespace explab
