#pragma once

#include "explab/base_map.hpp"
#include "explab/return_time.hpp"

namespace explab {

/// A base map under a strictly positive return time; the mapping-torus flow
/// they generate. Immutable after construction and safe to share.
struct SuspensionFlow {
    BaseSpace base;
    BaseMap map;
    ReturnTime time;
};

/// A mapping-torus point: base coordinate x and fiber time s in [0, T(x)).
struct SuspState {
    double x = 0.0;
    double s = 0.0;
};

/// Construction-time audit: T strictly positive on a grid plus all knots;
/// the map sends an audit grid back into the base (skipped for the halving
/// map, whose interval bases are truncations). Throws ParameterError.
void validate_suspension(const SuspensionFlow& flow, std::size_t grid_n = 10000);

/// Birkhoff sum T_n(x): sum_{i=0}^{n-1} T(f^i x) for n >= 0, and the cocycle
/// extension -sum_{i=1}^{|n|} T(f^-i x) for n < 0, so phi_{T_n(x)}(x,0) =
/// (f^n x, 0).
double birkhoff_sum(const SuspensionFlow& flow, double x, long n);

/// Flow the state for time t (any sign): unit speed up the fiber, wrapping
/// through (x, T(x)) ~ (f x, 0). Resolved by forward/backward search with a
/// running Birkhoff sum.
SuspState suspension_evaluate(const SuspensionFlow& flow, SuspState state, double t);

/// Metric on the mapping torus: minimum over the direct chart and the two
/// one-step gluing charts.
double suspension_distance(const SuspensionFlow& flow, SuspState a, SuspState b);

} // namespace explab
