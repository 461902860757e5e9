#pragma once

#include "explab/parallel.hpp"
#include "explab/suspension.hpp"

namespace explab {

/// Birkhoff-sum equidistribution gap for a rotation suspension with smooth
/// return time: g_n = max over a uniform grid of |tau*q_n - T_{q_n}(x)|,
/// where q_n is the n-th convergent denominator of the rotation angle and
/// tau the mean of T (analytic for the supported kinds: sinusoidal -> 1,
/// constant -> c). Rejects non-smooth return-time kinds and non-rotation
/// bases.
double denjoy_koksma_gap(const SuspensionFlow& flow, int n, long grid,
                         par::Exec exec = par::Exec::openmp);

/// The convergent denominator used by denjoy_koksma_gap(flow, n, ...).
long long denjoy_koksma_qn(const SuspensionFlow& flow, int n);

} // namespace explab
