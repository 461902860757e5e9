// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here; each criterion states what it checks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "explab/annulus_robust.hpp"
#include "explab/catalog.hpp"
#include "explab/contfrac.hpp"
#include "explab/denjoy_koksma.hpp"
#include "explab/frechet.hpp"
#include "explab/run.hpp"
#include "explab/separation.hpp"

using namespace explab;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

struct Criterion {
    std::ostringstream log;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << "\n    FAILED: " << what;
        }
    }
    void expect_near(double got, double want, double tol, const std::string& what) {
        if (!(std::fabs(got - want) <= tol)) {
            ok = false;
            log << "\n    FAILED: " << what << " (got " << got << ", want " << want << " +- " << tol
                << ")";
        }
    }
};

void report(int index, const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.log << "\n    EXCEPTION: " << e.what();
    }
    std::printf("[%s] %d. %s%s\n", c.ok ? "PASS" : "FAIL", index, name.c_str(),
                c.log.str().c_str());
    if (!c.ok) ++g_failures;
}

double uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

// --- 1. Harmonic gap -------------------------------------------------------

void criterion_harmonic(Criterion& c) {
    auto ks = ks_minimal_suspension(kGoldenAlpha, 12);
    auto cert = divergence_partial_sums(ks.flow, ks.zero_minus, ks.zero_plus, ks.n_j.back(), 1e12);
    double harmonic = 0.0;
    for (std::size_t j = 0; j < ks.n_j.size(); ++j) {
        harmonic += 1.0 / static_cast<double>(j + 1);
        const double got = cert.partial_sums[static_cast<std::size_t>(ks.n_j[j])];
        c.expect_near(got, harmonic, 1e-9,
                      "Birkhoff gap at n_" + std::to_string(j + 1) + " = " +
                          std::to_string(ks.n_j[j]));
    }
}

// --- 2. Reciprocal divergence ----------------------------------------------

void criterion_reciprocal(Criterion& c) {
    auto flow = disc_reciprocal_suspension(1e-10);
    std::mt19937_64 gen(20260809);
    int separated_via_gap = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const double x = 0.55 + 0.3 * uniform(gen);
        const double y = x + 0.01 + uniform(gen) * std::min(0.4, 1.0 - x - 0.01);
        // per-step gaps 2^n (1/x - 1/y), relative tolerance 1e-9 (values reach
        // 2^30 / x where an absolute 1e-9 is below one ulp)
        for (int n = 0; n <= 30; ++n) {
            const double gap = eval_time(flow.time, base_iterate(flow.map, x, n)) -
                               eval_time(flow.time, base_iterate(flow.map, y, n));
            const double expect = std::ldexp(1.0, n) * (1.0 / x - 1.0 / y);
            if (std::fabs(gap - expect) > 1e-9 * std::max(1.0, std::fabs(expect))) {
                c.expect(false, "per-step gap formula at n=" + std::to_string(n));
                break;
            }
        }
        auto cert = divergence_partial_sums(flow, x, y, 30);
        c.expect(std::fabs(cert.partial_sums.back()) > 1e3, "partial sums exceed 1e3");
        auto v = kinematic_check_pair(flow, x, y, 0.5, 1000, SeparationMode::forward);
        if (v.separated && v.channel == Channel::time_gap) ++separated_via_gap;
    }
    c.expect(separated_via_gap == 20, "all 20 pairs separate via the time-gap channel");
}

// --- 3. Band-knots divergence ----------------------------------------------

void criterion_band_knots(Criterion& c) {
    // The divergence here is logarithmic: sup_N |S_N| ~ 2 (y-x) ln(n_max) up
    // to O(1) cancellation in the phase where the iterates straddle the tent
    // peaks, so crossing rho = 1 needs the deepest representable tent family
    // (n_max = 51) and a pair-gap floor. A dense scan of the boxes below
    // gives sup |S| >= 1.58 (case 1) and >= 1.82 (case 2). Case-2 pairs
    // additionally avoid the orbit diagonal y ~ x/2, where the divergence
    // constant 2|2y - x| degenerates (y = f(x) is the same orbit).
    auto flow = band_knots_suspension(51);
    std::mt19937_64 gen(3);
    for (int rep = 0; rep < 20; ++rep) {
        const double x = 0.63 + 0.12 * uniform(gen);
        const double y = x + 0.22 + uniform(gen) * (1.0 - x - 0.22);
        // first n with both iterates past the tent peak b_n; the per-iterate
        // bound is the construction's sharp form: the tent rise at iterate m
        // is 1/(m+1), i.e. the quoted 2(y-x)/n under 1-based step counting
        int n0 = 0;
        while (std::ldexp(1.0, -(n0 + 2)) >= x - 0.5) ++n0;
        bool bound_ok = true;
        for (int m = n0; m <= 30; ++m) {
            const double gap = eval_time(flow.time, base_iterate(flow.map, x, m)) -
                               eval_time(flow.time, base_iterate(flow.map, y, m));
            if (gap < 2.0 * (y - x) / (m + 1) - 1e-12) bound_ok = false;
        }
        c.expect(bound_ok, "case-1 per-step bound 2(y-x)/(m+1) from iterate n0");
        auto v = kinematic_check_pair(flow, x, y, 1.0, 100000, SeparationMode::forward);
        c.expect(v.separated, "case-1 pair separates within N = 1e5 at rho = 1");
    }
    for (int rep = 0; rep < 5; ++rep) {
        double x = 0.0, y = 0.0;
        do {
            x = 0.63 + 0.32 * uniform(gen);
            y = 0.26 + 0.21 * uniform(gen);
        } while (std::fabs(2.0 * y - x) < 0.4);
        auto v = kinematic_check_pair(flow, x, y, 1.0, 100000, SeparationMode::forward);
        c.expect(v.separated, "case-2 pair separates within N = 1e5 at rho = 1");
    }
}

// --- 4. Denjoy-Koksma -------------------------------------------------------

void criterion_denjoy_koksma(Criterion& c) {
    auto flow = rotation_smooth_suspension(kGoldenAlpha, 0.3);
    auto q = continued_fraction_denominators(kGoldenAlpha, 10);
    const double sin_alpha = std::fabs(std::sin(kPi * kGoldenAlpha));
    double g10 = 0.0;
    for (int n = 1; n <= 10; ++n) {
        const double g = denjoy_koksma_gap(flow, n, 8192);
        const double closed =
            0.3 * std::fabs(std::sin(kPi * static_cast<double>(q[n - 1]) * kGoldenAlpha)) /
            sin_alpha;
        c.expect_near(g, closed, 1e-6, "g_" + std::to_string(n) + " vs closed form");
        if (n == 10) g10 = g;
    }
    c.expect(g10 < 1e-2, "g_10 < 1e-2");

    const long long q8 = q[7];
    const double g8 = denjoy_koksma_gap(flow, 8, 8192);
    const double base_gap = nearest_integer_distance(kGoldenAlpha, q8);
    const double rho = 3.0 * g8 + 0.1 * base_gap;
    const double x0 = 0.1;
    const double y0 = frac01(x0 + static_cast<double>(q8) * kGoldenAlpha);
    auto v = kinematic_check_pair(flow, x0, y0, rho, 10 * q8, SeparationMode::forward);
    c.expect(!v.separated, "witness pair (x0, x0 + q_8 alpha) not separated up to 10 q_8");
}

// --- 5. Kinematic vs geometric ----------------------------------------------

void criterion_kinematic_vs_geometric(Criterion& c) {
    auto band = periodic_band(false);
    auto v = separation_time(band, {1.0, 0.0}, {1.1, 0.0}, 0.2, 100.0, 1e-3,
                             SeparationMode::forward);
    c.expect(v.separated, "band pair separates kinematically at delta = 0.2");
    if (v.separated) {
        // analytic two-circle oracle: chord(t/1 - t/1.1) = 0.2
        double lo = 0.0, hi = 4.0;
        auto chord = [](double t) {
            return std::sqrt(2.21 - 2.2 * std::cos(t * (1.0 - 1.0 / 1.1)));
        };
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (chord(mid) < 0.2 ? lo : hi) = mid;
        }
        c.expect(std::fabs(*v.witness_time - hi) <= 0.15 * hi,
                 "witness time within 15% of the analytic oracle");
    }

    Trajectory ta = sample_trajectory(band, {1.0, 0.0}, 2.0 * kPi, 0.01);
    Trajectory tb = sample_trajectory(band, {1.1, 0.0}, 2.2 * kPi, 0.01);
    const double df = discrete_frechet(ta, tb);
    c.expect_near(df, 0.1, 1e-2, "discrete Frechet distance of the orbit pair");

    auto rigid = periodic_band(true);
    std::mt19937_64 gen(55);
    std::vector<std::pair<Point2, Point2>> pairs;
    while (pairs.size() < 50) {
        const double r = std::sqrt(1.0 + 3.0 * uniform(gen));
        const double th = 2.0 * kPi * uniform(gen);
        const Point2 a{r * std::cos(th), r * std::sin(th)};
        const double gap = 0.01 + 0.08 * uniform(gen);
        const double dir = 2.0 * kPi * uniform(gen);
        const Point2 b{a.x + gap * std::cos(dir), a.y + gap * std::sin(dir)};
        if (domain_contains(rigid.domain, b)) pairs.emplace_back(a, b);
    }
    auto rep = pair_sweep(rigid, pairs, 0.1, 50.0, 1e-3, SeparationMode::forward);
    c.expect(rep.errors == 0, "rigid-band sweep runs clean");
    c.expect(rep.fraction_separated == 0.0, "rigid band separates nothing (0% of 50 pairs)");
}

// --- 6. Moebius counterexample ----------------------------------------------

void criterion_moebius(Criterion& c) {
    auto flow = moebius_suspension();
    for (double x : {0.01, 0.05, 0.1}) {
        auto v = kinematic_check_pair(flow, x, -x, 0.5, 100000, SeparationMode::forward);
        c.expect(!v.separated, "pair (x,-x) with x=" + std::to_string(x) + " not separated");
        c.expect_near(v.margin, 0.5 - 2.0 * x, 1e-12, "margin = rho - base gap (time gap 0)");
        const double time_gap =
            birkhoff_sum(flow, x, 1000) - birkhoff_sum(flow, -x, 1000);
        c.expect(time_gap == 0.0, "Birkhoff gap exactly zero (T even)");
    }
}

// --- 7. Annulus robustness ----------------------------------------------------

void criterion_annulus(Criterion& c) {
    auto X = make_profile_field(profile_linear());
    validate_conservative(X);
    for (int i = 0; i < 32; ++i) {
        const double r = 1.0 + i / 31.0;
        const auto rep = orbit_period_flux(X, CircleOrbit{r}, 512);
        c.expect_near(rep.flux_period, 2.0 * kPi / (r * r), 1e-6,
                      "flux period at r=" + std::to_string(r));
    }
    c.expect(green_check(X, 1.0, 2.0, 512) < 1e-6, "Green residual < 1e-6 at quad_n = 512");

    bool divz_ok = true;
    for (int i = 0; i < 20 && divz_ok; ++i) {
        const double r = 1.05 + 0.9 * i / 19.0;
        for (int k = 0; k < 20; ++k) {
            const double th = 2.0 * kPi * k / 20.0;
            const Point2 p{r * std::cos(th), r * std::sin(th)};
            if (std::fabs(div_z_numeric(X, p) - div_z_closed(*X.profile, r)) > 1e-5) {
                divz_ok = false;
                break;
            }
        }
    }
    c.expect(divz_ok, "closed-form vs numerical div Z within 1e-5 on a 20x20 grid");

    auto verdict = robust_criterion(X, 64);
    c.expect(verdict.satisfied, "criterion satisfied for f(u) = u");
    c.expect_near(verdict.min_abs_div, 0.125, 1e-9, "min |div Z| = 2/2^4 at the outer radius");
    c.expect(verdict.periods_strictly_monotone, "flux periods strictly monotone over 32 radii");

    auto Xp = make_profile_field(profile_linear_plus_sin(0.01));
    validate_conservative(Xp);
    c.expect(robust_criterion(Xp, 64).satisfied, "perturbed profile u + 0.01 sin u satisfied");
}

// --- 8. Structural invariants -------------------------------------------------

void criterion_structural(Criterion& c) {
    // cocycle within 1e-10 on flows with exactly invertible map arithmetic
    // (negation, modular step, ldexp halving), so backward paths revisit
    // bit-identical points; the Denjoy roof has tent slopes up to ~1e9 where
    // interpolation round-off alone exceeds this tolerance
    std::mt19937_64 gen(8);
    std::vector<SuspensionFlow> flows = {moebius_suspension(),
                                         rotation_smooth_suspension(kGoldenAlpha, 0.3),
                                         band_knots_suspension(30)};
    bool cocycle_ok = true;
    for (const auto& flow : flows) {
        double lo = 0.0, hi = 1.0;
        if (const auto* iv = std::get_if<Interval>(&flow.base)) {
            lo = iv->lo;
            hi = iv->hi;
        }
        for (int rep = 0; rep < 20; ++rep) {
            const double x = lo + uniform(gen) * (hi - lo);
            const long m = static_cast<long>(gen() % 401) - 200;
            const long n = static_cast<long>(gen() % 401) - 200;
            const double lhs = birkhoff_sum(flow, x, m + n);
            const double rhs =
                birkhoff_sum(flow, base_iterate(flow.map, x, n), m) + birkhoff_sum(flow, x, n);
            if (std::fabs(lhs - rhs) > 1e-10) cocycle_ok = false;
        }
    }
    c.expect(cocycle_ok, "cocycle identity within 1e-10 for |m|,|n| <= 200");

    // suspension semigroup within 1e-9
    bool semigroup_ok = true;
    for (const auto& flow : flows) {
        double lo = 0.0, hi = 1.0;
        if (const auto* iv = std::get_if<Interval>(&flow.base)) {
            lo = iv->lo;
            hi = iv->hi;
        }
        for (int rep = 0; rep < 20; ++rep) {
            SuspState start{lo + uniform(gen) * (hi - lo), 0.0};
            const double s = 30.0 * uniform(gen) - 15.0;
            const double t = 30.0 * uniform(gen) - 15.0;
            SuspState one = suspension_evaluate(flow, suspension_evaluate(flow, start, s), t);
            SuspState two = suspension_evaluate(flow, start, s + t);
            if (suspension_distance(flow, one, two) > 1e-9) semigroup_ok = false;
        }
    }
    c.expect(semigroup_ok, "suspension semigroup within 1e-9");

    // integrator order-4 ratios in [12, 20]
    auto rigid = periodic_band(true);
    auto endpoint_error = [&](double dt) {
        Point2 p = flow_to(rigid, {1.0, 0.0}, 1.0, dt);
        return std::hypot(p.x - std::cos(1.0), p.y - std::sin(1.0));
    };
    for (double dt : {0.1, 0.05, 0.02}) {
        const double ratio = endpoint_error(dt) / endpoint_error(dt / 2.0);
        c.expect(ratio >= 12.0 && ratio <= 20.0,
                 "order-4 Richardson ratio at dt=" + std::to_string(dt));
    }

    // Frechet dominated by the sup distance on 100 random trajectory pairs
    auto band = periodic_band(false);
    bool frechet_ok = true;
    for (int rep = 0; rep < 100; ++rep) {
        const double r1 = 1.0 + uniform(gen), th1 = 2.0 * kPi * uniform(gen);
        const double r2 = 1.0 + uniform(gen), th2 = 2.0 * kPi * uniform(gen);
        Trajectory ta =
            sample_trajectory(band, {r1 * std::cos(th1), r1 * std::sin(th1)}, 2.0, 0.02);
        Trajectory tb =
            sample_trajectory(band, {r2 * std::cos(th2), r2 * std::sin(th2)}, 2.0, 0.02);
        double sup = 0.0;
        for (std::size_t i = 0; i < ta.points.size(); ++i)
            sup = std::max(sup, domain_distance(band.domain, ta.points[i], tb.points[i]));
        if (discrete_frechet(ta, tb) > sup + 1e-12) frechet_ok = false;
    }
    c.expect(frechet_ok, "discrete Frechet <= index-identity sup distance (100 pairs)");

    // Denjoy exact 1/2-contraction for n <= 30 (1e-13: pure representation
    // rounding of the affine construction)
    auto den = denjoy_suspension(kGoldenAlpha, 0.12, 30);
    const auto& iv0 = den.structure.interval(0);
    bool denjoy_ok = true;
    for (double frac : {0.15, 0.5, 0.95}) {
        const double x = iv0.left + 0.05 * (iv0.right - iv0.left);
        const double y = iv0.left + frac * (iv0.right - iv0.left) +
                         0.04 * (iv0.right - iv0.left);
        const double d0 = base_distance(den.flow.base, x, y);
        double xn = x, yn = y;
        for (int n = 1; n <= 30; ++n) {
            xn = map_forward(den.flow.map, xn);
            yn = map_forward(den.flow.map, yn);
            if (std::fabs(base_distance(den.flow.base, xn, yn) - d0 * std::ldexp(1.0, -n)) > 1e-13)
                denjoy_ok = false;
        }
    }
    c.expect(denjoy_ok, "Denjoy 1/2-contraction exact to 1e-13 for n <= 30");

    // determinism: byte-identical reruns of a seeded sweep
    auto cfg = parse_config(R"({"example":"BandKnots","operation":"separation-sweep",
        "parameters":{"pairs":{"random":{"count":16,"min_gap":0.1,"max_gap":0.3}},
                      "rho":1.0,"N":5000},
        "seed":7,"output":{"path":"acceptance_sweep_a.csv","format":"csv"}})");
    run(cfg);
    run(cfg, "acceptance_sweep_b.csv");
    auto slurp = [](const char* p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string a = slurp("acceptance_sweep_a.csv");
    c.expect(!a.empty() && a == slurp("acceptance_sweep_b.csv"),
             "identical config+seed produce byte-identical CSV");
    std::remove("acceptance_sweep_a.csv");
    std::remove("acceptance_sweep_b.csv");
}

} // namespace

int main() {
    report(1, "harmonic gap between the splitting states (KSMinimal, j <= 12)", criterion_harmonic);
    report(2, "reciprocal divergence 2^n (1/x - 1/y) and time-gap separation", criterion_reciprocal);
    report(3, "band-knots divergence: per-step bound and separation at rho = 1",
           criterion_band_knots);
    report(4, "Denjoy-Koksma gaps match the sinusoid closed form; witness pair stays close",
           criterion_denjoy_koksma);
    report(5, "kinematic separation vs geometric closeness on the periodic band",
           criterion_kinematic_vs_geometric);
    report(6, "Moebius pairs (x,-x): separating but never kinematically separated",
           criterion_moebius);
    report(7, "annulus robustness: flux periods, Green identity, criterion verdicts",
           criterion_annulus);
    report(8, "structural invariants: cocycle, semigroup, order-4, Frechet bound, "
              "Denjoy contraction, determinism",
           criterion_structural);
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
