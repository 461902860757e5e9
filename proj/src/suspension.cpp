#include "explab/suspension.hpp"

#include <algorithm>
#include <cmath>

namespace explab {

void validate_suspension(const SuspensionFlow& flow, std::size_t grid_n) {
    validate_base(flow.base);
    validate_return_time(flow.time);
    check_time_positive(flow.time, flow.base, grid_n);
    // A piecewise-linear roof whose knot support is strictly inside the base
    // meets the fill region there; the boundary knots must match the fill or
    // the roof is discontinuous.
    if (const auto* pl = std::get_if<PiecewiseLinearTime>(&flow.time);
        pl && !pl->pos.empty() && !std::holds_alternative<FiniteSet>(flow.base)) {
        double lo = 0.0, hi = 1.0;
        if (const auto* iv = std::get_if<Interval>(&flow.base)) {
            lo = iv->lo;
            hi = iv->hi;
        }
        const bool full_circle = base_is_circle(flow.base) && pl->pos.front() <= 1e-15 &&
                                 pl->pos.back() >= 1.0 - 1e-15;
        if (full_circle) {
            if (pl->val.front() != pl->val.back())
                throw ParameterError("suspension: circle roof jumps at the wrap");
        } else {
            const bool open_left = pl->pos.front() > lo + 1e-15 || base_is_circle(flow.base);
            const bool open_right = pl->pos.back() < hi - 1e-15 || base_is_circle(flow.base);
            if ((open_left && pl->val.front() != pl->fill) ||
                (open_right && pl->val.back() != pl->fill))
                throw ParameterError(
                    "suspension: piecewise-linear roof jumps where its support meets the fill");
        }
    }
    if (std::holds_alternative<HalvingMap>(flow.map)) return; // declared truncation
    if (std::holds_alternative<PiecewiseAffineCircleMap>(flow.map)) return; // circle self-map by construction
    for (double x : base_grid(flow.base, 64)) {
        double y = map_forward(flow.map, x);
        if (!base_contains(flow.base, y, 1e-9))
            throw ParameterError("suspension: map does not preserve the base space");
        double back = map_inverse(flow.map, y);
        if (std::fabs(back - x) > 1e-12)
            throw ParameterError("suspension: inverse(forward(x)) != x on audit grid");
    }
}

double birkhoff_sum(const SuspensionFlow& flow, double x, long n) {
    double acc = 0.0;
    if (n >= 0) {
        double y = x;
        for (long i = 0; i < n; ++i) {
            acc += eval_time(flow.time, y);
            y = map_forward(flow.map, y);
        }
        return acc;
    }
    double y = x;
    for (long i = 0; i < -n; ++i) {
        y = map_inverse(flow.map, y);
        acc -= eval_time(flow.time, y);
    }
    return acc;
}

SuspState suspension_evaluate(const SuspensionFlow& flow, SuspState state, double t) {
    // Running Birkhoff sum, accumulated in the same order as birkhoff_sum so
    // that flowing exactly T_n(x) from (x,0) recovers (f^n x, 0) without
    // cancellation noise.
    const double total = state.s + t;
    double x = state.x;
    double acc = 0.0;
    long guard = 0;
    if (total >= 0.0) {
        double roof = eval_time(flow.time, x);
        while (acc + roof <= total) {
            acc += roof;
            x = map_forward(flow.map, x);
            roof = eval_time(flow.time, x);
            if (++guard > 100000000L) throw Error("suspension_evaluate: wrap count exceeded 1e8");
        }
        return {x, total - acc};
    }
    while (total < acc) {
        x = map_inverse(flow.map, x);
        acc -= eval_time(flow.time, x);
        if (++guard > 100000000L) throw Error("suspension_evaluate: wrap count exceeded 1e8");
    }
    return {x, total - acc};
}

double suspension_distance(const SuspensionFlow& flow, SuspState a, SuspState b) {
    const double direct = base_distance(flow.base, a.x, b.x) + std::fabs(a.s - b.s);
    const double over_a = base_distance(flow.base, map_forward(flow.map, a.x), b.x) +
                          (eval_time(flow.time, a.x) - a.s) + b.s;
    const double over_b = base_distance(flow.base, a.x, map_forward(flow.map, b.x)) +
                          (eval_time(flow.time, b.x) - b.s) + a.s;
    return std::min({direct, over_a, over_b});
}

} // namespace explab
