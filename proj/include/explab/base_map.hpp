#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "explab/base_space.hpp"

namespace explab {

struct IdentityMap {};

/// x -> x/2. Treated as a total map on the reals; interval bases using it
/// declare the region of interest only (orbits may leave it).
struct HalvingMap {};

/// x -> -x on [-1,1].
struct NegationMap {};

struct RotationMap {
    double alpha; // in (0,1)
};

struct FinitePermutationMap {
    std::vector<double> points;     // the finite base, strictly increasing
    std::vector<std::size_t> table; // forward permutation: points[i] -> points[table[i]]
};

/// Increasing piecewise-affine circle homeomorphism given by breakpoint pairs
/// (dom[i] -> img[i]), both reduced to [0,1). Evaluating at a breakpoint
/// returns its image exactly (and inversely), which the insertion-based
/// constructions rely on for orbit tracking.
struct PiecewiseAffineCircleMap {
    std::shared_ptr<const std::vector<double>> dom; // strictly increasing
    std::shared_ptr<const std::vector<double>> img; // reduced images
    std::size_t wrap = 0; // first index with img[i] < img[0] (lift jumps to 1)

    double forward(double x) const;
    double inverse(double y) const;
};

PiecewiseAffineCircleMap make_piecewise_affine_circle_map(std::vector<double> dom,
                                                          std::vector<double> img);

using BaseMap = std::variant<IdentityMap, HalvingMap, NegationMap, RotationMap,
                             FinitePermutationMap, PiecewiseAffineCircleMap>;

double map_forward(const BaseMap& m, double x);
double map_inverse(const BaseMap& m, double x);

/// n-fold forward (n>0) or inverse (n<0) application; n = 0 returns x exactly.
/// Rotations are computed as x + n*alpha mod 1 in one step.
double base_iterate(const BaseMap& m, double x, long n);

} // namespace explab
