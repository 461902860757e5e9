#pragma once

#include <vector>

#include "explab/vector_field.hpp"

namespace explab {

/// A uniformly sampled orbit segment: points at start_time + k*step.
struct Trajectory {
    double start_time = 0.0;
    double step = 0.0;
    std::vector<Point2> points;
    Domain domain;
};

/// Escape during trajectory sampling; carries the partial trajectory.
class TrajectoryEscapeError : public EscapeError {
public:
    TrajectoryEscapeError(const EscapeError& e, Trajectory partial)
        : EscapeError(e.what(), e.stage_x, e.stage_y), partial_trajectory(std::move(partial)) {}
    Trajectory partial_trajectory;
};

/// One classical 4th-order step. dt may be negative. Stage points are checked
/// against the domain with a slack of 4*dt^2 (boundary orbits dip O(dt^2) at
/// stage points); a stage outside the slack band raises EscapeError carrying
/// the offending point. Torus outputs are reduced mod 1.
Point2 step_rk4(const VectorFieldSpec& spec, Point2 p, double dt);

/// Integrate for time t (any sign) with fixed step dt > 0: floor(|t|/dt) full
/// steps plus one fractional step. flow_to(spec, p, 0, dt) == p exactly.
Point2 flow_to(const VectorFieldSpec& spec, Point2 p, double t, double dt);

/// Samples at times 0, dt, ..., floor(horizon/dt)*dt; first point is p.
/// An escape raises TrajectoryEscapeError with the partial trajectory.
Trajectory sample_trajectory(const VectorFieldSpec& spec, Point2 p, double horizon, double dt);

/// Max pairwise domain distance over the sampled segment phi_[0,s](p)
/// (phi_[s,0] for s < 0). Lower bound to the true diameter.
double orbit_segment_diameter(const VectorFieldSpec& spec, Point2 p, double s, double dt);

} // namespace explab
