#pragma once

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "explab/errors.hpp"
#include "explab/geometry.hpp"

namespace explab {

struct Interval {
    double lo;
    double hi;
};

/// Unit-length circle, coordinates in [0,1).
struct UnitCircle {};

struct FiniteSet {
    std::vector<double> points; // strictly increasing
};

using BaseSpace = std::variant<Interval, UnitCircle, FiniteSet>;

inline void validate_base(const BaseSpace& b) {
    if (const auto* iv = std::get_if<Interval>(&b)) {
        if (!(iv->lo < iv->hi)) throw ParameterError("interval base needs lo < hi");
    } else if (const auto* fs = std::get_if<FiniteSet>(&b)) {
        if (fs->points.empty()) throw ParameterError("finite-set base needs at least one point");
        for (std::size_t i = 1; i < fs->points.size(); ++i)
            if (!(fs->points[i - 1] < fs->points[i]))
                throw ParameterError("finite-set base points must be strictly increasing");
    }
}

inline bool base_is_circle(const BaseSpace& b) { return std::holds_alternative<UnitCircle>(b); }

/// Distance on the base: |x-y| on intervals and finite sets, wrap metric on
/// the circle.
inline double base_distance(const BaseSpace& b, double x, double y) {
    if (base_is_circle(b)) {
        double d = std::fabs(frac01(x) - frac01(y));
        return std::min(d, 1.0 - d);
    }
    return std::fabs(x - y);
}

inline bool base_contains(const BaseSpace& b, double x, double tol = 1e-12) {
    if (const auto* iv = std::get_if<Interval>(&b)) return x >= iv->lo - tol && x <= iv->hi + tol;
    if (const auto* fs = std::get_if<FiniteSet>(&b)) {
        for (double p : fs->points)
            if (std::fabs(p - x) <= tol) return true;
        return false;
    }
    return x >= 0.0 && x < 1.0;
}

/// Evaluation grid used by construction-time audits.
inline std::vector<double> base_grid(const BaseSpace& b, std::size_t n) {
    if (const auto* fs = std::get_if<FiniteSet>(&b)) return fs->points;
    double lo = 0.0, hi = 1.0;
    bool half_open = true;
    if (const auto* iv = std::get_if<Interval>(&b)) {
        lo = iv->lo;
        hi = iv->hi;
        half_open = false;
    }
    std::vector<double> g;
    g.reserve(n);
    const std::size_t m = half_open ? n : n - 1;
    for (std::size_t i = 0; i < n; ++i)
        g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m));
    return g;
}

} // namespace explab
