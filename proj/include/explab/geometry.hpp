#pragma once

#include <algorithm>
#include <cmath>
#include <variant>

#include "explab/errors.hpp"

namespace explab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// A phase-space point in chart coordinates. On the flat torus both
/// coordinates are kept reduced to [0,1).
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }
inline double euclid(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double radius(Point2 p) { return std::hypot(p.x, p.y); }

struct Annulus {
    double r_in;
    double r_out;
};
struct Disc {
    double radius;
};
struct FlatTorus {};

using Domain = std::variant<Annulus, Disc, FlatTorus>;

inline bool is_torus(const Domain& d) { return std::holds_alternative<FlatTorus>(d); }

inline void validate_domain(const Domain& d) {
    if (const auto* a = std::get_if<Annulus>(&d)) {
        if (!(a->r_in > 0.0) || !(a->r_out > a->r_in))
            throw ParameterError("annulus radii must satisfy 0 < r_in < r_out");
    } else if (const auto* disc = std::get_if<Disc>(&d)) {
        if (!(disc->radius > 0.0)) throw ParameterError("disc radius must be positive");
    }
}

inline double frac01(double x) {
    double f = x - std::floor(x);
    return (f >= 1.0) ? 0.0 : f; // floor rounding can leave f == 1.0
}

/// Reduce torus coordinates to [0,1); identity on planar domains.
inline Point2 domain_reduce(const Domain& d, Point2 p) {
    if (is_torus(d)) return {frac01(p.x), frac01(p.y)};
    return p;
}

/// Membership test with an optional slack band used by the integrator for
/// stage points (see step_rk4).
inline bool domain_contains(const Domain& d, Point2 p, double slack = 0.0) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
    if (const auto* a = std::get_if<Annulus>(&d)) {
        double r = radius(p);
        return r >= a->r_in - slack && r <= a->r_out + slack;
    }
    if (const auto* disc = std::get_if<Disc>(&d)) return radius(p) <= disc->radius + slack;
    return true; // torus
}

inline double domain_diameter(const Domain& d) {
    if (const auto* a = std::get_if<Annulus>(&d)) return 2.0 * a->r_out;
    if (const auto* disc = std::get_if<Disc>(&d)) return 2.0 * disc->radius;
    return std::sqrt(0.5); // torus: max of the wrap metric
}

/// Distance in the domain metric: Euclidean on annulus/disc, wrap metric on
/// the flat torus.
inline double domain_distance(const Domain& d, Point2 p, Point2 q) {
    if (!is_torus(d)) return euclid(p, q);
    double dx = std::fabs(frac01(p.x) - frac01(q.x));
    double dy = std::fabs(frac01(p.y) - frac01(q.y));
    dx = std::min(dx, 1.0 - dx);
    dy = std::min(dy, 1.0 - dy);
    return std::hypot(dx, dy);
}

inline bool domains_equal(const Domain& a, const Domain& b) {
    if (a.index() != b.index()) return false;
    if (const auto* aa = std::get_if<Annulus>(&a)) {
        const auto& bb = std::get<Annulus>(b);
        return aa->r_in == bb.r_in && aa->r_out == bb.r_out;
    }
    if (const auto* ad = std::get_if<Disc>(&a)) return ad->radius == std::get<Disc>(b).radius;
    return true;
}

} // namespace explab
