#include "explab/integrate.hpp"

#include <cmath>

namespace explab {

namespace {

double stage_slack(double dt) { return 4.0 * dt * dt + 1e-12; }

Vec2 eval_at(const VectorFieldSpec& spec, Point2 p, double slack) {
    if (!domain_contains(spec.domain, p, slack))
        throw EscapeError(spec.name + ": integration stage left the domain", p.x, p.y);
    return spec.evaluator(domain_reduce(spec.domain, p));
}

} // namespace

Point2 step_rk4(const VectorFieldSpec& spec, Point2 p, double dt) {
    const double slack = stage_slack(dt);
    const Vec2 k1 = eval_at(spec, p, slack);
    const Vec2 k2 = eval_at(spec, p + (dt / 2.0) * k1, slack);
    const Vec2 k3 = eval_at(spec, p + (dt / 2.0) * k2, slack);
    const Vec2 k4 = eval_at(spec, p + dt * k3, slack);
    Point2 out = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!domain_contains(spec.domain, out, slack))
        throw EscapeError(spec.name + ": integration step left the domain", out.x, out.y);
    return domain_reduce(spec.domain, out);
}

Point2 flow_to(const VectorFieldSpec& spec, Point2 p, double t, double dt) {
    if (!(dt > 0.0)) throw ParameterError("flow_to: dt must be positive");
    if (t == 0.0) return p;
    const double sgn = (t > 0.0) ? 1.0 : -1.0;
    const double total = std::fabs(t);
    const long n_full = static_cast<long>(std::floor(total / dt));
    Point2 q = p;
    for (long i = 0; i < n_full; ++i) q = step_rk4(spec, q, sgn * dt);
    const double rem = total - static_cast<double>(n_full) * dt;
    if (rem > 1e-12) q = step_rk4(spec, q, sgn * rem);
    return q;
}

Trajectory sample_trajectory(const VectorFieldSpec& spec, Point2 p, double horizon, double dt) {
    if (!(horizon > 0.0) || !(dt > 0.0))
        throw ParameterError("sample_trajectory: horizon and dt must be positive");
    Trajectory traj;
    traj.start_time = 0.0;
    traj.step = dt;
    traj.domain = spec.domain;
    const long n = static_cast<long>(std::floor(horizon / dt));
    traj.points.reserve(static_cast<std::size_t>(n) + 1);
    Point2 q = domain_reduce(spec.domain, p);
    traj.points.push_back(q);
    for (long i = 0; i < n; ++i) {
        try {
            q = step_rk4(spec, q, dt);
        } catch (const EscapeError& e) {
            throw TrajectoryEscapeError(e, traj);
        }
        traj.points.push_back(q);
    }
    return traj;
}

double orbit_segment_diameter(const VectorFieldSpec& spec, Point2 p, double s, double dt) {
    if (!(dt > 0.0)) throw ParameterError("orbit_segment_diameter: dt must be positive");
    if (s == 0.0) return 0.0;
    const double sgn = (s > 0.0) ? 1.0 : -1.0;
    const long n = static_cast<long>(std::floor(std::fabs(s) / dt));
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    Point2 q = domain_reduce(spec.domain, p);
    pts.push_back(q);
    for (long i = 0; i < n; ++i) {
        q = step_rk4(spec, q, sgn * dt);
        pts.push_back(q);
    }
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, domain_distance(spec.domain, pts[i], pts[j]));
    return best;
}

} // namespace explab
