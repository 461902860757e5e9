#include "explab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace explab {

const std::vector<std::pair<ExampleId, std::string>>& example_ids() {
    static const std::vector<std::pair<ExampleId, std::string>> ids = {
        {ExampleId::PeriodicBand, "PeriodicBand"},
        {ExampleId::RigidBand, "RigidBand"},
        {ExampleId::TorusFakeSaddle, "TorusFakeSaddle"},
        {ExampleId::MoebiusSuspension, "MoebiusSuspension"},
        {ExampleId::DiscReciprocal, "DiscReciprocal"},
        {ExampleId::BandKnots, "BandKnots"},
        {ExampleId::IdentitySuspension, "IdentitySuspension"},
        {ExampleId::DenjoySuspension, "DenjoySuspension"},
        {ExampleId::KSMinimal, "KSMinimal"},
        {ExampleId::RotationSmooth, "RotationSmooth"},
    };
    return ids;
}

ExampleId example_id_from_string(const std::string& name) {
    for (const auto& [id, s] : example_ids())
        if (s == name) return id;
    throw ConfigError("unknown example id: " + name);
}

std::string example_description(ExampleId id) {
    switch (id) {
        case ExampleId::PeriodicBand:
            return "unit-speed circular flow on the annulus r in [1,2]; periods 2*pi*r";
        case ExampleId::RigidBand:
            return "rigid rotation (-y,x) on the annulus; constant angular velocity time change";
        case ExampleId::TorusFakeSaddle:
            return "linear torus flow slowed by a sin^2 bump with one zero (fake saddle)";
        case ExampleId::MoebiusSuspension:
            return "suspension of x -> -x on [-1,1] under T = 1+x^2 (separating, zero time gaps)";
        case ExampleId::DiscReciprocal:
            return "halving map on [x_min,1] under T = 1/x; gaps grow as 2^n (1/x - 1/y)";
        case ExampleId::BandKnots:
            return "halving map on [0,1] under the tent return time with knots at 2^-n";
        case ExampleId::IdentitySuspension:
            return "identity map under an injective return time; gaps grow linearly";
        case ExampleId::DenjoySuspension:
            return "rotation with wandering intervals contracting by 1/2; tent roof on forward images";
        case ExampleId::KSMinimal:
            return "rotation split along the orbit of 0; harmonic Birkhoff gap between 0- and 0+";
        default:
            return "rotation under T = 1 + a*sin(2 pi x); smooth roof, not kinematic expansive";
    }
}

VectorFieldSpec periodic_band(bool rigid) {
    VectorFieldSpec spec;
    spec.name = rigid ? "rigid-band" : "periodic-band";
    spec.parameters = {{"rigid", rigid ? 1.0 : 0.0}};
    spec.domain = Annulus{1.0, 2.0};
    if (rigid) {
        spec.evaluator = [](Point2 p) { return Vec2{-p.y, p.x}; };
    } else {
        spec.evaluator = [](Point2 p) {
            const double r = radius(p);
            return Vec2{-p.y / r, p.x / r};
        };
        spec.singular_points = {{0.0, 0.0}};
    }
    return spec;
}

VectorFieldSpec torus_fake_saddle(double alpha, Point2 p) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("torus_fake_saddle: alpha must be in (0,1)");
    const Point2 z = {frac01(p.x), frac01(p.y)};
    VectorFieldSpec spec;
    spec.name = "torus-fake-saddle";
    spec.parameters = {{"alpha", alpha}, {"px", z.x}, {"py", z.y}};
    spec.domain = FlatTorus{};
    spec.evaluator = [alpha, z](Point2 q) {
        const double sx = std::sin(std::numbers::pi * (q.x - z.x));
        const double sy = std::sin(std::numbers::pi * (q.y - z.y));
        const double f = sx * sx + sy * sy;
        return Vec2{f, f * alpha};
    };
    return spec;
}

SuspensionFlow moebius_suspension() {
    SuspensionFlow flow{Interval{-1.0, 1.0}, NegationMap{}, QuadraticTime{}};
    validate_suspension(flow);
    return flow;
}

SuspensionFlow disc_reciprocal_suspension(double x_min) {
    if (!(x_min > 0.0 && x_min < 1.0))
        throw ParameterError("disc_reciprocal_suspension: x_min must be in (0,1)");
    SuspensionFlow flow{Interval{x_min, 1.0}, HalvingMap{}, ReciprocalTime{}};
    validate_suspension(flow);
    return flow;
}

SuspensionFlow band_knots_suspension(int n_max) {
    // b_n = 2^-(n+1) (1 + 2^-(n+1)) collapses onto a_{n+1} in doubles once
    // n+1 exceeds the 52-bit significand, so 51 is the deepest representable
    // tent. The divergence here is logarithmic (partial sums ~ 2(y-x) ln N),
    // so order-1 separation thresholds need the tent family deeper than the
    // scan start; keep n_max as an explicit experiment parameter.
    if (n_max < 1 || n_max > 51)
        throw ParameterError("band_knots_suspension: n_max must be in [1,51]");
    std::vector<std::pair<double, double>> knots;
    // a_n = 2^-n carries value 1 (incl. the closure knot a_{n_max+1});
    // b_n = 2^-(n+1) + 2^-(2n+2) carries the peak 1 + 1/(n+1).
    for (int n = 0; n <= n_max + 1; ++n) knots.emplace_back(std::ldexp(1.0, -n), 1.0);
    for (int n = 0; n <= n_max; ++n) {
        const double b = std::ldexp(1.0, -(n + 1)) + std::ldexp(1.0, -(2 * n + 2));
        knots.emplace_back(b, 1.0 + 1.0 / static_cast<double>(n + 1));
    }
    std::sort(knots.begin(), knots.end());
    PiecewiseLinearTime t;
    for (const auto& [p, v] : knots) {
        t.pos.push_back(p);
        t.val.push_back(v);
    }
    SuspensionFlow flow{Interval{0.0, 1.0}, HalvingMap{}, std::move(t)};
    validate_suspension(flow);
    return flow;
}

SuspensionFlow identity_suspension(BaseSpace base, ReturnTime time) {
    validate_base(base);
    validate_return_time(time);
    const std::vector<double> grid = base_grid(base, 1000);
    std::vector<std::pair<double, double>> seen; // (value, point)
    seen.reserve(grid.size());
    for (double x : grid) seen.emplace_back(eval_time(time, x), x);
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i) {
        if (std::fabs(seen[i].first - seen[i - 1].first) <= 1e-12) {
            std::ostringstream msg;
            msg << "identity_suspension: return time not injective; witness pair x="
                << seen[i - 1].second << ", y=" << seen[i].second;
            throw ParameterError(msg.str());
        }
    }
    SuspensionFlow flow{std::move(base), IdentityMap{}, std::move(time)};
    validate_suspension(flow);
    return flow;
}

DenjoyConstruction denjoy_suspension(double alpha, double interval_length, int n_max) {
    if (n_max < 1 || n_max > 30)
        throw ParameterError("denjoy_suspension: n_max must be in [1,30]");
    if (!(interval_length > 0.0))
        throw ParameterError("denjoy_suspension: interval_length must be positive");
    std::vector<Insertion> schedule;
    for (long n = -n_max; n <= n_max; ++n)
        schedule.push_back({n, std::ldexp(interval_length, -static_cast<int>(std::labs(n)))});
    DenjoyConstruction out;
    out.structure = build_split_circle(alpha, schedule);

    const SplitInterval& base_iv = out.structure.interval(0);
    PiecewiseLinearTime t;
    std::vector<std::pair<double, double>> knots;
    for (int n = 1; n <= n_max; ++n) {
        // z_n = f^n(a + (b-a)/(n+2)); the seeds converge to the left endpoint,
        // so f^-n(z_n) -> a.
        double z = base_iv.left + (base_iv.right - base_iv.left) / static_cast<double>(n + 2);
        for (int i = 0; i < n; ++i) z = out.structure.map.forward(z);
        const SplitInterval& iv = out.structure.interval(n);
        if (!(iv.left < z && z < iv.right))
            throw ParameterError("denjoy_suspension: tent peak left its interval (degenerate lengths)");
        knots.emplace_back(iv.left, 1.0);
        knots.emplace_back(z, 1.0 + 1.0 / static_cast<double>(n));
        knots.emplace_back(iv.right, 1.0);
        out.z_points.push_back(z);
    }
    std::sort(knots.begin(), knots.end());
    for (const auto& [p, v] : knots) {
        t.pos.push_back(p);
        t.val.push_back(v);
    }
    out.flow = SuspensionFlow{UnitCircle{}, out.structure.map, std::move(t)};
    validate_suspension(out.flow);
    return out;
}

KSConstruction ks_minimal_suspension(double alpha, int j_max) {
    if (j_max < 1 || j_max > 20)
        throw ParameterError("ks_minimal_suspension: j_max must be in [1,20]");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("ks_minimal_suspension: alpha must be in (0,1)");

    KSConstruction out;
    // Record entry times: first n with frac(n*alpha) strictly below every
    // previous record; x_{n_j} decreases strictly to 0. Positions use the
    // same expression as build_split_circle so they match its slots exactly.
    double record = 2.0;
    for (long n = 1; static_cast<int>(out.n_j.size()) < j_max; ++n) {
        const double pos = frac01(std::fmod(static_cast<double>(n) * alpha, 1.0));
        if (pos > 0.0 && pos < record) {
            record = pos;
            out.n_j.push_back(n);
            out.x_nj.push_back(pos);
        }
        if (n > 100000000L)
            throw ParameterError("ks_minimal_suspension: could not find record times "
                                 "(alpha rational to precision?)");
    }
    const long n_fwd = out.n_j.back();
    const long n_back = 1005; // covers the backward non-separation audit at N = 1e3
    if (n_fwd + n_back + 1 > 4000000L)
        throw ParameterError("ks_minimal_suspension: insertion schedule too large "
                             "(record times grow exponentially; lower j_max)");

    const double L0 = 0.2;
    std::vector<Insertion> schedule;
    schedule.reserve(static_cast<std::size_t>(n_fwd + n_back + 1));
    for (long n = -n_back; n <= n_fwd; ++n) {
        const double an = static_cast<double>(std::labs(n));
        schedule.push_back({n, L0 / ((an + 1.0) * (an + 2.0))});
    }
    out.structure = build_split_circle(alpha, schedule);

    const SplitInterval& at_zero = out.structure.interval(0);
    out.zero_plus = at_zero.left;   // limit of the Cantor set from below 0
    out.zero_minus = at_zero.right; // its forward orbit samples the spikes

    // Tent supports [x_{n_j}, x_{n_j} + delta_j] in original coordinates,
    // halved until they contain no other split point (hence pairwise
    // disjoint) and stay inside the circle.
    std::vector<double> positions;
    positions.reserve(out.structure.intervals.size());
    for (const auto& iv : out.structure.intervals) positions.push_back(iv.orig_pos);

    PiecewiseLinearTime t;
    std::vector<std::pair<double, double>> knots;
    double prev_delta = 0.2;
    for (int j = 1; j <= j_max; ++j) {
        const double x = out.x_nj[static_cast<std::size_t>(j - 1)];
        auto it = std::upper_bound(positions.begin(), positions.end(), x);
        const double next_split = (it == positions.end()) ? 1.0 : *it;
        double delta = prev_delta / 2.0; // keeps delta_j strictly decreasing
        int halvings = 0;
        while (x + delta >= next_split || x + delta >= 1.0) {
            delta /= 2.0;
            if (++halvings > 2000)
                throw ParameterError("ks_minimal_suspension: tent disjointness unachievable "
                                     "within float precision at requested j_max");
        }
        prev_delta = delta;
        out.delta_j.push_back(delta);

        const SplitInterval& iv = out.structure.interval(out.n_j[static_cast<std::size_t>(j - 1)]);
        const double peak = 1.0 + 1.0 / static_cast<double>(j);
        knots.emplace_back(iv.left, 1.0);
        knots.emplace_back(iv.right, peak);
        knots.emplace_back(out.structure.embed(x + delta), 1.0);
    }
    std::sort(knots.begin(), knots.end());
    for (const auto& [p, v] : knots) {
        t.pos.push_back(p);
        t.val.push_back(v);
    }
    out.flow = SuspensionFlow{UnitCircle{}, out.structure.map, std::move(t)};
    validate_suspension(out.flow);
    return out;
}

SuspensionFlow rotation_smooth_suspension(double alpha, double amplitude) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("rotation_smooth_suspension: alpha must be in (0,1)");
    if (!(amplitude >= 0.0 && amplitude < 1.0))
        throw ParameterError("rotation_smooth_suspension: amplitude must be in [0,1)");
    SuspensionFlow flow{UnitCircle{}, RotationMap{alpha}, SinusoidalTime{amplitude}};
    validate_suspension(flow);
    return flow;
}

} // namespace explab
