#pragma once

#include <vector>

namespace explab {

/// Denominators q_1..q_k of the continued-fraction convergents of alpha in
/// (0,1). Strictly increasing, q_{n+1} = a_{n+1} q_n + q_{n-1}. Throws
/// ParameterError listing the computed terms if the expansion terminates
/// early (alpha rational to working precision) or overflows.
std::vector<long long> continued_fraction_denominators(double alpha, int k);

/// Distance from q*alpha to the nearest integer.
double nearest_integer_distance(double alpha, long long q);

} // namespace explab
