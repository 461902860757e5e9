#pragma once

#include <map>
#include <vector>

#include "explab/base_map.hpp"

namespace explab {

/// One inserted (wandering) interval of a blown-up circle rotation, in the
/// normalized coordinates of the new circle.
struct SplitInterval {
    long orbit_index;  // inserted at the rotation orbit point frac(n*alpha)
    double orig_pos;   // that orbit point, original coordinates
    double raw_len;    // pre-normalization length
    double left;       // normalized new-circle endpoints
    double right;
};

/// A circle rotation with selected orbit points of 0 blown up into intervals.
/// The new circle is rescaled to unit length. The map sends each inserted
/// interval affinely onto the next one (where the next orbit index is also
/// split) and interpolates monotonically on the complement arcs.
struct SplitCircle {
    double alpha = 0.0;
    double scale = 1.0;           // 1 / (1 + total raw inserted length)
    double total_inserted = 0.0;  // normalized measure of the wandering part
    std::vector<SplitInterval> intervals; // sorted by left endpoint
    std::map<long, std::size_t> by_orbit_index;
    PiecewiseAffineCircleMap map;

    /// New-circle coordinate of an original point x in [0,1). For a split
    /// orbit point this is the left endpoint of its interval.
    double embed(double x) const;

    const SplitInterval& interval(long orbit_index) const;
};

/// Insertion schedule entry: blow up frac(n*alpha) into an interval of the
/// given raw (pre-normalization) length.
struct Insertion {
    long orbit_index;
    double raw_length;
};

/// Builds the blown-up circle. Requires distinct orbit points (alpha
/// irrational to precision over the requested indices) and total raw length
/// < 0.5; throws ParameterError otherwise.
SplitCircle build_split_circle(double alpha, const std::vector<Insertion>& schedule);

} // namespace explab
