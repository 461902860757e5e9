#pragma once

#include <string>
#include <vector>

#include "explab/split_circle.hpp"
#include "explab/suspension.hpp"
#include "explab/vector_field.hpp"

namespace explab {

enum class ExampleId {
    PeriodicBand,
    RigidBand,
    TorusFakeSaddle,
    MoebiusSuspension,
    DiscReciprocal,
    BandKnots,
    IdentitySuspension,
    DenjoySuspension,
    KSMinimal,
    RotationSmooth,
};

const std::vector<std::pair<ExampleId, std::string>>& example_ids();
ExampleId example_id_from_string(const std::string& name);
std::string example_description(ExampleId id);

inline constexpr double kGoldenAlpha = 0.6180339887498949; // (sqrt(5)-1)/2

/// Circular flow on the annulus r in [1,2]: unit speed (-y,x)/r, or the
/// constant-angular-velocity time change (-y,x) when rigid.
VectorFieldSpec periodic_band(bool rigid);

/// f(q) * (1, alpha) on the flat torus, f the sin^2 bump with a single zero
/// at p: a linear flow stopped at one point.
VectorFieldSpec torus_fake_saddle(double alpha, Point2 p);

/// Negation map on [-1,1] under T(x) = 1 + x^2: separating on the Moebius
/// band but with identically zero time gaps on the pairs (x,-x).
SuspensionFlow moebius_suspension();

/// Halving map on [x_min,1] under T(x) = 1/x: geometric blow-up of the
/// return-time gaps 2^n (1/x - 1/y).
SuspensionFlow disc_reciprocal_suspension(double x_min);

/// Halving map on [0,1] under the tent return time with knots at
/// a_n = 2^-n (value 1) and b_n = 2^-(n+1) + 2^-(2n+2) (value 1 + 1/(n+1)),
/// extended linearly; 1 elsewhere.
SuspensionFlow band_knots_suspension(int n_max);

/// Identity map under an injective return time; rejects non-injective T with
/// a witness pair in the message.
SuspensionFlow identity_suspension(BaseSpace base, ReturnTime time);

struct DenjoyConstruction {
    SuspensionFlow flow;
    SplitCircle structure;
    std::vector<double> z_points; // z_n (n = 1..n_max), normalized coordinates
};

/// Circle rotation with the orbit points R^n(0), |n| <= n_max, blown up into
/// intervals of length interval_length * 2^-|n|; the map contracts forward
/// images by exactly 1/2; T is 1 off the forward images and tent-shaped on
/// f^n(I) with peak 1 + 1/n at z_n.
DenjoyConstruction denjoy_suspension(double alpha, double interval_length, int n_max);

struct KSConstruction {
    SuspensionFlow flow;
    SplitCircle structure;
    double zero_minus = 0.0; // endpoint of the interval at 0 whose forward orbit samples the spikes
    double zero_plus = 0.0;
    std::vector<long> n_j;       // record entry times of the rotation orbit into (0, x_{n_{j-1}})
    std::vector<double> x_nj;    // frac(n_j * alpha), original coordinates
    std::vector<double> delta_j; // tent support widths, halved until disjoint
};

/// Minimal positive-expansive example: rotation split along the orbit of 0,
/// with return-time spikes 1 + 1/j attached at the splittings of x_{n_j} so
/// the Birkhoff gap between the two splitting points of 0 grows harmonically.
KSConstruction ks_minimal_suspension(double alpha, int j_max);

/// Rotation under T(x) = 1 + amplitude * sin(2 pi x); tau = 1 exactly.
SuspensionFlow rotation_smooth_suspension(double alpha, double amplitude);

} // namespace explab
