#include "explab/annulus_robust.hpp"

#include <cmath>
#include <numbers>

#include "explab/integrate.hpp"

namespace explab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Annulus& annulus_of(const ConservativeFieldSpec& X) {
    const auto* a = std::get_if<Annulus>(&X.underlying.domain);
    if (!a) throw ParameterError("conservative field must live on an annulus");
    return *a;
}

} // namespace

RadialProfile profile_linear() {
    return {"linear", [](double u) { return u; }, [](double) { return 1.0; }, {}};
}

RadialProfile profile_constant(double c) {
    if (c == 0.0) throw ParameterError("constant profile must be nonzero");
    return {"constant", [c](double) { return c; }, [](double) { return 0.0; }, {{"c", c}}};
}

RadialProfile profile_linear_plus_sin(double eps) {
    return {"linear_plus_sin",
            [eps](double u) { return u + eps * std::sin(u); },
            [eps](double u) { return 1.0 + eps * std::cos(u); },
            {{"eps", eps}}};
}

ConservativeFieldSpec make_profile_field(const RadialProfile& p, double r_in, double r_out) {
    VectorFieldSpec spec;
    spec.name = "annulus-profile-" + p.name;
    spec.parameters = p.params;
    spec.parameters["r_in"] = r_in;
    spec.parameters["r_out"] = r_out;
    spec.domain = Annulus{r_in, r_out};
    auto f = p.f;
    spec.evaluator = [f](Point2 q) {
        const double fu = f(q.x * q.x + q.y * q.y);
        return Vec2{fu * q.y, -fu * q.x};
    };
    ConservativeFieldSpec out;
    out.underlying = std::move(spec);
    out.profile = p;
    return out;
}

void validate_conservative(const ConservativeFieldSpec& X, int grid_n) {
    const Annulus& a = annulus_of(X);
    const double h = 1e-4;
    for (int i = 0; i <= grid_n; ++i) {
        const double r = a.r_in + (a.r_out - a.r_in) * i / static_cast<double>(grid_n);
        const double rs = std::min(std::max(r, a.r_in + h), a.r_out - h); // stencil stays inside
        for (int k = 0; k < grid_n; ++k) {
            const double th = kTwoPi * k / static_cast<double>(grid_n);
            const Point2 p{rs * std::cos(th), rs * std::sin(th)};
            const auto ev = X.underlying.evaluator;
            const double div = (ev({p.x + h, p.y}).x - ev({p.x - h, p.y}).x +
                                ev({p.x, p.y + h}).y - ev({p.x, p.y - h}).y) /
                               (2.0 * h);
            if (std::fabs(div) > 1e-6)
                throw ParameterError("conservative field audit: numerical divergence exceeds 1e-6");
            const Point2 q{r * std::cos(th), r * std::sin(th)};
            const Vec2 v = X.underlying.evaluator(q);
            if (norm(v) == 0.0)
                throw ParameterError("conservative field audit: field vanishes on the annulus");
            if (i == 0 || i == grid_n) {
                const double radial = (v.x * q.x + v.y * q.y) / r;
                if (std::fabs(radial) > 1e-8)
                    throw ParameterError("conservative field audit: not tangent to the boundary");
            }
        }
    }
}

Vec2 z_field(const ConservativeFieldSpec& X, Point2 p) {
    if (!domain_contains(X.underlying.domain, p))
        throw DomainError(X.underlying.name + ": point outside annulus");
    const Vec2 v = X.underlying.evaluator(p);
    const double n2 = dot(v, v);
    if (n2 == 0.0) throw SingularityError("z_field: X vanishes at the evaluation point");
    return {-v.y / n2, v.x / n2};
}

double div_z_numeric(const ConservativeFieldSpec& X, Point2 p, double h) {
    const Domain& dom = X.underlying.domain;
    const Point2 xp{p.x + h, p.y}, xm{p.x - h, p.y}, yp{p.x, p.y + h}, ym{p.x, p.y - h};
    for (const Point2& q : {xp, xm, yp, ym})
        if (!domain_contains(dom, q))
            throw DomainError("div_z_numeric: stencil exits the annulus; use a smaller h");
    return (z_field(X, xp).x - z_field(X, xm).x) / (2.0 * h) +
           (z_field(X, yp).y - z_field(X, ym).y) / (2.0 * h);
}

double div_z_closed(const RadialProfile& p, double r) {
    const double u = r * r;
    const double fu = p.f(u);
    return -2.0 * p.fprime(u) / (fu * fu);
}

namespace {

double circle_flux_period(const ConservativeFieldSpec& X, double r, int quad_n) {
    // Periodic uniform grid; the trapezoid rule is exact to spectral accuracy
    // here. Integrand: (1/||X||) * r dtheta.
    double sum = 0.0;
    for (int k = 0; k < quad_n; ++k) {
        const double th = kTwoPi * k / static_cast<double>(quad_n);
        const Point2 p{r * std::cos(th), r * std::sin(th)};
        const Vec2 v = X.underlying.evaluator(p);
        const double speed = norm(v);
        if (speed == 0.0) throw SingularityError("orbit_period_flux: X vanishes on the curve");
        sum += r / speed;
    }
    return sum * kTwoPi / static_cast<double>(quad_n);
}

double polyline_flux_period(const ConservativeFieldSpec& X, const PolylineOrbit& poly) {
    const auto& pts = poly.points;
    if (pts.size() < 3 || euclid(pts.front(), pts.back()) > 1e-12)
        throw ParameterError("polyline orbit must be closed (first point repeated last)");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double len = euclid(pts[i], pts[i + 1]);
        const double sa = norm(X.underlying.evaluator(pts[i]));
        const double sb = norm(X.underlying.evaluator(pts[i + 1]));
        if (sa == 0.0 || sb == 0.0)
            throw SingularityError("orbit_period_flux: X vanishes on the curve");
        sum += 0.5 * (1.0 / sa + 1.0 / sb) * len; // trapezoid in arclength
    }
    return sum;
}

// First-return time from a point of the circle orbit: accumulate the swept
// angle until |Delta theta| = 2 pi, interpolating the crossing.
std::pair<double, bool> direct_return_period(const ConservativeFieldSpec& X, double r, double dt) {
    Point2 p{r, 0.0};
    double angle = 0.0;
    double prev_theta = 0.0;
    const long max_steps = static_cast<long>(1e8);
    for (long k = 1; k <= max_steps; ++k) {
        p = step_rk4(X.underlying, p, dt);
        const double th = std::atan2(p.y, p.x);
        double dth = th - prev_theta;
        if (dth > std::numbers::pi) dth -= kTwoPi;
        if (dth < -std::numbers::pi) dth += kTwoPi;
        prev_theta = th;
        const double next = angle + dth;
        if (std::fabs(next) >= kTwoPi) {
            const double need = (next > 0.0 ? kTwoPi : -kTwoPi) - angle;
            const double fracstep = (dth != 0.0) ? need / dth : 1.0;
            return {(static_cast<double>(k - 1) + fracstep) * dt, true};
        }
        angle = next;
    }
    return {0.0, false};
}

} // namespace

PeriodReport orbit_period_flux(const ConservativeFieldSpec& X, const OrbitCurve& gamma, int quad_n,
                               bool direct, double direct_dt) {
    if (quad_n < 64) throw ParameterError("orbit_period_flux: quad_n must be >= 64");
    PeriodReport rep;
    if (const auto* c = std::get_if<CircleOrbit>(&gamma)) {
        const Annulus& a = annulus_of(X);
        if (c->radius < a.r_in || c->radius > a.r_out)
            throw DomainError("orbit_period_flux: circle leaves the annulus");
        rep.flux_period = circle_flux_period(X, c->radius, quad_n);
        if (direct) {
            auto [t, ok] = direct_return_period(X, c->radius, direct_dt);
            rep.direct_converged = ok;
            if (ok) {
                rep.direct_period = t;
                rep.residual = std::fabs(rep.flux_period - t);
            }
        }
    } else {
        rep.flux_period = polyline_flux_period(X, std::get<PolylineOrbit>(gamma));
        // direct return is first-class only for circle orbits
    }
    return rep;
}

double green_check(const ConservativeFieldSpec& X, double r1, double r2, int quad_n,
                   par::Exec exec) {
    const Annulus& a = annulus_of(X);
    if (!(r1 < r2) || r1 < a.r_in || r2 > a.r_out)
        throw ParameterError("green_check: need r_in <= r1 < r2 <= r_out");
    if (quad_n < 4) throw ParameterError("green_check: quad_n too small");

    const double lhs =
        circle_flux_period(X, r2, quad_n) - circle_flux_period(X, r1, quad_n);

    // Area integral of div Z over the ring, in polar coordinates: Simpson in
    // r (order 4), uniform periodic average in theta.
    const int nr = (quad_n % 2 == 0) ? quad_n : quad_n + 1;
    const int nth = quad_n;
    const double hr = (r2 - r1) / static_cast<double>(nr);
    const bool closed = X.profile.has_value();

    auto ring_value = [&](double r) {
        if (closed) return div_z_closed(*X.profile, r) * r;
        double mean = par::block_sum(
            static_cast<std::size_t>(nth),
            [&](std::size_t k) {
                const double th = kTwoPi * static_cast<double>(k) / nth;
                return div_z_numeric(X, {r * std::cos(th), r * std::sin(th)});
            },
            par::Exec::serial);
        return mean / static_cast<double>(nth) * r;
    };

    const double rhs = kTwoPi * par::block_sum(
                                    static_cast<std::size_t>(nr) + 1,
                                    [&](std::size_t i) {
                                        const double r = r1 + hr * static_cast<double>(i);
                                        const double w = (i == 0 || i == static_cast<std::size_t>(nr))
                                                             ? 1.0
                                                             : (i % 2 == 1 ? 4.0 : 2.0);
                                        return w * ring_value(r);
                                    },
                                    exec) *
                       hr / 3.0;
    return std::fabs(lhs - rhs);
}

CriterionVerdict robust_criterion(const ConservativeFieldSpec& X, int grid_n, par::Exec exec) {
    if (grid_n < 16) throw ParameterError("robust_criterion: grid_n must be >= 16");
    const Annulus& a = annulus_of(X);
    const bool closed = X.profile.has_value();
    const double h = 1e-4;
    const std::size_t n = static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n);

    auto value_at = [&](std::size_t idx) {
        const std::size_t ir = idx / static_cast<std::size_t>(grid_n);
        const std::size_t it = idx % static_cast<std::size_t>(grid_n);
        double r = a.r_in + (a.r_out - a.r_in) * static_cast<double>(ir) / (grid_n - 1);
        const double th = kTwoPi * static_cast<double>(it) / grid_n;
        if (closed) return std::fabs(div_z_closed(*X.profile, r));
        r = std::min(std::max(r, a.r_in + 2.0 * h), a.r_out - 2.0 * h);
        return std::fabs(div_z_numeric(X, {r * std::cos(th), r * std::sin(th)}, h));
    };

    const par::ArgExtreme best = par::min_scan(n, value_at, exec);
    CriterionVerdict v;
    v.min_abs_div = best.value;
    v.satisfied = best.value > 1e-8;
    const std::size_t ir = best.index / static_cast<std::size_t>(grid_n);
    const std::size_t it = best.index % static_cast<std::size_t>(grid_n);
    v.argmin_r = a.r_in + (a.r_out - a.r_in) * static_cast<double>(ir) / (grid_n - 1);
    v.argmin_theta = kTwoPi * static_cast<double>(it) / grid_n;
    v.argmin = {v.argmin_r * std::cos(v.argmin_theta), v.argmin_r * std::sin(v.argmin_theta)};

    // Consequence of the sign-definite Green identity: flux periods strictly
    // monotone in r.
    const int nrad = 32;
    std::vector<double> periods(nrad);
    for (int i = 0; i < nrad; ++i) {
        const double r = a.r_in + (a.r_out - a.r_in) * i / static_cast<double>(nrad - 1);
        periods[static_cast<std::size_t>(i)] = circle_flux_period(X, r, 256);
    }
    bool inc = true, dec = true;
    for (int i = 1; i < nrad; ++i) {
        inc = inc && periods[i] > periods[i - 1];
        dec = dec && periods[i] < periods[i - 1];
    }
    v.periods_strictly_monotone = inc || dec;
    v.period_direction = inc ? +1 : (dec ? -1 : 0);
    return v;
}

} // namespace explab
