#pragma once

#include "explab/integrate.hpp"

namespace explab {

/// Discrete Fréchet distance between two sampled trajectories: the coupled
/// minimax recurrence with anchored endpoints and monotone couplings. This is
/// the geometric-closeness notion; restricting to monotone lattice couplings
/// refines the continuous definition from above with an unbounded refinement
/// error (a documented limitation).
double discrete_frechet(const Trajectory& ta, const Trajectory& tb);

} // namespace explab
