#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "explab/parallel.hpp"
#include "explab/vector_field.hpp"

namespace explab {

/// Radial profile f for the field family X_f(x,y) = f(r^2) (y,-x), with its
/// closed-form derivative.
struct RadialProfile {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> fprime;
    std::map<std::string, double> params;
};

RadialProfile profile_linear();                 // f(u) = u
RadialProfile profile_constant(double c);       // f(u) = c
RadialProfile profile_linear_plus_sin(double eps); // f(u) = u + eps*sin(u)

/// A divergence-free annulus field tangent to both boundary circles. The
/// preconditions are checked numerically rather than trusted, so inline
/// fields can be admitted.
struct ConservativeFieldSpec {
    VectorFieldSpec underlying;
    std::optional<RadialProfile> profile;
};

/// X_f(x,y) = f(r^2) (y,-x) on the annulus [r_in, r_out].
ConservativeFieldSpec make_profile_field(const RadialProfile& p, double r_in = 1.0,
                                         double r_out = 2.0);

/// Audit: |div X| < 1e-6 on a polar grid, boundary tangency (radial component
/// < 1e-8), nonvanishing.
void validate_conservative(const ConservativeFieldSpec& X, int grid_n = 16);

/// Z = X^perp / ||X||^2, X = (a,b), X^perp = (-b,a). Throws SingularityError
/// where X vanishes.
Vec2 z_field(const ConservativeFieldSpec& X, Point2 p);

/// Central-difference divergence of Z with stencil half-width h.
double div_z_numeric(const ConservativeFieldSpec& X, Point2 p, double h = 1e-4);

/// Closed form -2 f'(r^2) / f(r^2)^2 for the profile family.
double div_z_closed(const RadialProfile& p, double r);

struct CircleOrbit {
    double radius;
};

/// Closed sampled polyline (first point repeated last), counterclockwise.
struct PolylineOrbit {
    std::vector<Point2> points;
};

using OrbitCurve = std::variant<CircleOrbit, PolylineOrbit>;

/// An orbit period computed two independent ways: the flux integral of
/// 1/||X|| along the curve, and (optionally) direct integration until first
/// return.
struct PeriodReport {
    double flux_period = 0.0;
    std::optional<double> direct_period;
    double residual = 0.0;
    bool direct_converged = true;
};

PeriodReport orbit_period_flux(const ConservativeFieldSpec& X, const OrbitCurve& gamma, int quad_n,
                               bool direct = false, double direct_dt = 1e-4);

/// |T(gamma_2) - T(gamma_1) - area integral of div Z over the ring| for the
/// circles r1 < r2: flux periods vs polar quadrature (Simpson in r, periodic
/// trapezoid in theta).
double green_check(const ConservativeFieldSpec& X, double r1, double r2, int quad_n,
                   par::Exec exec = par::Exec::openmp);

struct CriterionVerdict {
    bool satisfied = false;
    double min_abs_div = 0.0;
    Point2 argmin;
    double argmin_r = 0.0;
    double argmin_theta = 0.0;
    bool periods_strictly_monotone = false;
    int period_direction = 0; // +1 increasing in r, -1 decreasing, 0 neither
};

/// min |div Z| over a polar grid (satisfied iff > 1e-8), plus the monotone
/// flux-period consequence on 32 sampled radii.
CriterionVerdict robust_criterion(const ConservativeFieldSpec& X, int grid_n,
                                  par::Exec exec = par::Exec::openmp);

} // namespace explab
