#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "explab/geometry.hpp"

namespace explab {

/// An analytic planar or flat-torus velocity field with a declared domain.
/// `singular_points` lists the points where the closed form is undefined
/// (fields with a 1/||.|| factor); smooth zeros of a field are not singular.
struct VectorFieldSpec {
    std::string name;
    std::map<std::string, double> parameters;
    Domain domain;
    std::function<Vec2(Point2)> evaluator;
    std::vector<Point2> singular_points;
};

/// Closed-form velocity at p. Throws SingularityError at a declared singular
/// point and DomainError outside the domain.
inline Vec2 eval_field(const VectorFieldSpec& spec, Point2 p) {
    Point2 q = domain_reduce(spec.domain, p);
    for (const Point2& s : spec.singular_points) {
        if (std::fabs(q.x - s.x) <= 1e-14 && std::fabs(q.y - s.y) <= 1e-14)
            throw SingularityError(spec.name + ": evaluation at declared singular point");
    }
    if (!domain_contains(spec.domain, q))
        throw DomainError(spec.name + ": point outside domain");
    return spec.evaluator(q);
}

/// The field with all velocities negated (time reversal).
inline VectorFieldSpec reversed(const VectorFieldSpec& spec) {
    VectorFieldSpec r = spec;
    r.name = spec.name + "-reversed";
    auto base = spec.evaluator;
    r.evaluator = [base](Point2 p) { return -base(p); };
    return r;
}

} // namespace explab
