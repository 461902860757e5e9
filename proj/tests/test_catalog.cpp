#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "explab/catalog.hpp"
#include "explab/separation.hpp"

using namespace explab;

TEST_CASE("moebius: quadratic roof and involution") {
    auto flow = moebius_suspension();
    CHECK(eval_time(flow.time, 0.5) == 1.25);
    CHECK(base_iterate(flow.map, 0.37, 2) == 0.37);
    // time gap channel identically zero on (x,-x): T is even
    for (long n = 0; n < 50; ++n) {
        const double gx = birkhoff_sum(flow, 0.2, n);
        const double gy = birkhoff_sum(flow, -0.2, n);
        CHECK(gx == gy);
    }
}

TEST_CASE("disc reciprocal: per-step gap formula") {
    auto flow = disc_reciprocal_suspension(1e-9);
    const double x = 0.5, y = 0.75;
    CHECK(eval_time(flow.time, base_iterate(flow.map, y, 0)) -
              eval_time(flow.time, base_iterate(flow.map, x, 0)) ==
          doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    for (long n = 0; n <= 25; ++n) {
        const double gap = eval_time(flow.time, base_iterate(flow.map, x, n)) -
                           eval_time(flow.time, base_iterate(flow.map, y, n));
        const double expect = std::ldexp(1.0, static_cast<int>(n)) * (1.0 / x - 1.0 / y);
        CHECK(gap == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(eval_time(flow.time, 1e-9) == doctest::Approx(1e9)); // max of T at the truncation
}

TEST_CASE("band knots: knot table") {
    auto flow = band_knots_suspension(30);
    CHECK(eval_time(flow.time, 0.75) == 2.0);    // b_0
    CHECK(eval_time(flow.time, 0.3125) == 1.5);  // b_1
    CHECK(eval_time(flow.time, 0.5) == 1.0);     // a_1
    CHECK(eval_time(flow.time, 1.0) == 1.0);     // a_0
    CHECK(eval_time(flow.time, 0.0) == 1.0);
    // b_n sits between a_{n+1} and a_n
    for (int n = 0; n <= 30; ++n) {
        const double a_n = std::ldexp(1.0, -n);
        const double a_n1 = std::ldexp(1.0, -(n + 1));
        const double b_n = a_n1 + std::ldexp(1.0, -(2 * n + 2));
        CHECK(b_n > a_n1);
        CHECK(b_n < a_n);
        CHECK(eval_time(flow.time, b_n) == doctest::Approx(1.0 + 1.0 / (n + 1)).epsilon(1e-15));
    }
}

TEST_CASE("band knots: case-1 per-iterate lower bound") {
    auto flow = band_knots_suspension(30);
    std::mt19937_64 gen(41);
    auto u = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (int rep = 0; rep < 20; ++rep) {
        const double x = 0.55 + 0.3 * u();
        const double y = x + 0.1 + u() * (0.99 - x - 0.1);
        // first n with both iterates past the tent peak b_n
        int n0 = 0;
        while (std::ldexp(1.0, -(n0 + 2)) >= x - 0.5) ++n0;
        for (int n = n0; n <= 30; ++n) {
            const double gap = eval_time(flow.time, base_iterate(flow.map, x, n)) -
                               eval_time(flow.time, base_iterate(flow.map, y, n));
            CHECK(gap >= 2.0 * (y - x) / (n + 1) - 1e-12);
        }
    }
}

TEST_CASE("identity suspension: finite set separates, constants rejected") {
    PiecewiseLinearTime t{{0.0, 0.3, 1.0}, {1.0, 1.5, 2.0}, 1.0};
    auto flow = identity_suspension(FiniteSet{{0.0, 0.3, 1.0}}, t);
    auto v = kinematic_check_pair(flow, 0.0, 0.3, 4.0, 100, SeparationMode::forward);
    REQUIRE(v.separated);
    CHECK(v.channel == Channel::time_gap);
    // gap grows as (n+1) * 0.5, crossing 4 at n = 7
    CHECK(*v.witness_index == 7);

    CHECK_THROWS_AS(identity_suspension(Interval{0.0, 1.0}, ConstantTime{1.0}), ParameterError);
    CHECK_THROWS_WITH_AS(
        static_cast<void>(identity_suspension(Interval{0.0, 1.0}, ConstantTime{1.0})),
        doctest::Contains("witness"), ParameterError);
}

TEST_CASE("identity suspension: interval with affine roof") {
    PiecewiseLinearTime t{{0.0, 1.0}, {1.0, 2.0}, 1.0}; // T = 1 + x
    auto flow = identity_suspension(Interval{0.0, 1.0}, t);
    const double x = 0.2, y = 0.6;
    for (long n : {3L, 10L}) {
        const double gap = birkhoff_sum(flow, y, n) - birkhoff_sum(flow, x, n);
        CHECK(gap == doctest::Approx(static_cast<double>(n) * (y - x)).epsilon(1e-12));
    }
}

TEST_CASE("denjoy: interval lengths contract by exactly 1/2") {
    auto den = denjoy_suspension(kGoldenAlpha, 0.12, 30);
    const auto& iv0 = den.structure.interval(0);
    const double len0 = iv0.right - iv0.left;
    for (int n = 0; n <= 2; ++n) {
        const auto& iv = den.structure.interval(n);
        CHECK(iv.right - iv.left ==
              doctest::Approx(len0 * std::ldexp(1.0, -n)).epsilon(1e-14));
    }
}

TEST_CASE("denjoy: wandering intervals pairwise disjoint, complement positive") {
    auto den = denjoy_suspension(kGoldenAlpha, 0.12, 30);
    const auto& ivs = den.structure.intervals;
    for (std::size_t i = 1; i < ivs.size(); ++i) CHECK(ivs[i - 1].right < ivs[i].left);
    CHECK(den.structure.total_inserted < 1.0);
    CHECK(1.0 - den.structure.total_inserted > 0.5);
}

TEST_CASE("denjoy: tent values at the z points") {
    auto den = denjoy_suspension(kGoldenAlpha, 0.12, 30);
    CHECK(eval_time(den.flow.time, den.z_points[0]) == 2.0);  // T(z_1)
    CHECK(eval_time(den.flow.time, den.z_points[1]) == 1.5);  // T(z_2)
    // roof is 1 on the complement and on backward images
    CHECK(eval_time(den.flow.time, den.structure.interval(-3).left) == 1.0);
    CHECK(eval_time(den.flow.time, den.structure.interval(0).left) == 1.0);
}

TEST_CASE("denjoy: exact halving of pair distances") {
    auto den = denjoy_suspension(kGoldenAlpha, 0.12, 30);
    const auto& iv0 = den.structure.interval(0);
    const double x = iv0.left + 0.2 * (iv0.right - iv0.left);
    const double y = iv0.left + 0.9 * (iv0.right - iv0.left);
    const double d0 = base_distance(den.flow.base, x, y);
    double xn = x, yn = y;
    for (int n = 1; n <= 30; ++n) {
        xn = map_forward(den.flow.map, xn);
        yn = map_forward(den.flow.map, yn);
        const double dn = base_distance(den.flow.base, xn, yn);
        CHECK(std::fabs(dn - d0 * std::ldexp(1.0, -n)) < 1e-13);
    }
}

TEST_CASE("denjoy: insertion overflow rejected") {
    CHECK_THROWS_AS(denjoy_suspension(kGoldenAlpha, 0.4, 10), ParameterError);
}

TEST_CASE("insertion maps: forward/inverse round trip and monotonicity") {
    auto den = denjoy_suspension(kGoldenAlpha, 0.12, 30);
    auto ks = ks_minimal_suspension(kGoldenAlpha, 6);
    std::mt19937_64 gen(97);
    auto u = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (const BaseMap* m : {&den.flow.map, &ks.flow.map}) {
        for (int rep = 0; rep < 2000; ++rep) {
            const double x = u();
            const double y = map_forward(*m, x);
            CHECK(y >= 0.0);
            CHECK(y < 1.0);
            CHECK(std::fabs(map_inverse(*m, y) - x) <= 1e-12);
            const double x2 = map_inverse(*m, x);
            CHECK(std::fabs(map_forward(*m, x2) - x) <= 1e-12);
        }
        // circular monotonicity: images of an increasing grid wrap exactly once
        const int n = 4096;
        int descents = 0;
        double prev = map_forward(*m, 0.0);
        for (int i = 1; i < n; ++i) {
            const double v = map_forward(*m, static_cast<double>(i) / n);
            if (v < prev) ++descents;
            prev = v;
        }
        CHECK(descents <= 1);
    }
}

TEST_CASE("ks minimal: record times and harmonic gaps") {
    auto ks = ks_minimal_suspension(kGoldenAlpha, 8);
    // records of frac(n * golden): every other Fibonacci number
    std::vector<long> expect = {1, 2, 5, 13, 34, 89, 233, 610};
    CHECK(ks.n_j == expect);
    for (std::size_t j = 1; j < ks.x_nj.size(); ++j) CHECK(ks.x_nj[j] < ks.x_nj[j - 1]);

    auto cert = divergence_partial_sums(ks.flow, ks.zero_minus, ks.zero_plus,
                                        ks.n_j.back(), 1e9);
    double harmonic = 0.0;
    for (std::size_t j = 0; j < ks.n_j.size(); ++j) {
        harmonic += 1.0 / static_cast<double>(j + 1);
        CHECK(std::fabs(cert.partial_sums[static_cast<std::size_t>(ks.n_j[j])] - harmonic) < 1e-9);
    }
    // H_5 = 137/60
    CHECK(std::fabs(cert.partial_sums[static_cast<std::size_t>(ks.n_j[4])] - 137.0 / 60.0) < 1e-9);
}

TEST_CASE("ks minimal: tents disjoint and roof continuous at knot boundaries") {
    auto ks = ks_minimal_suspension(kGoldenAlpha, 8);
    for (std::size_t j = 1; j < ks.n_j.size(); ++j) {
        const double lo_j = ks.x_nj[j];
        const double hi_j = lo_j + ks.delta_j[j];
        const double lo_prev = ks.x_nj[j - 1];
        CHECK(hi_j < lo_prev); // supports nest strictly below the previous record
        CHECK(ks.delta_j[j] < ks.delta_j[j - 1]);
    }
    // continuity at knot boundaries: one-sided evaluations approach the knot
    // value at the local slope rate (tents on the smallest intervals are
    // steep, so the tolerance is slope-aware)
    const auto& pl = std::get<PiecewiseLinearTime>(ks.flow.time);
    CHECK(pl.val.front() == pl.fill);
    CHECK(pl.val.back() == pl.fill);
    for (std::size_t i = 0; i < pl.pos.size(); ++i) {
        const double xm = pl.pos[i] - 1e-13; // representable one-sided probes
        const double xp = pl.pos[i] + 1e-13;
        const double slope_l =
            i == 0 ? 0.0 : (pl.val[i] - pl.val[i - 1]) / (pl.pos[i] - pl.pos[i - 1]);
        const double slope_r = i + 1 == pl.pos.size()
                                   ? 0.0
                                   : (pl.val[i + 1] - pl.val[i]) / (pl.pos[i + 1] - pl.pos[i]);
        const double left = eval_time(ks.flow.time, xm);
        const double right = eval_time(ks.flow.time, xp);
        CHECK(std::fabs(left - pl.val[i]) <=
              std::fabs(slope_l) * (pl.pos[i] - xm) * (1.0 + 1e-9) + 1e-12);
        CHECK(std::fabs(right - pl.val[i]) <=
              std::fabs(slope_r) * (xp - pl.pos[i]) * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("ks minimal: backward pair not separated") {
    auto ks = ks_minimal_suspension(kGoldenAlpha, 8);
    const double rho = 0.5 * min_time_on_grid(ks.flow.time, ks.flow.base);
    auto v = kinematic_check_pair(ks.flow, ks.zero_minus, ks.zero_plus, rho, 1000,
                                  SeparationMode::backward);
    CHECK_FALSE(v.separated);
    CHECK(v.margin > 0.0);
}

TEST_CASE("rotation smooth: amplitude zero keeps the base gap constant forever") {
    auto flow = rotation_smooth_suspension(kGoldenAlpha, 0.0);
    // any rho above the constant gap: never separated (time gaps identically 0)
    auto v = kinematic_check_pair(flow, 0.2, 0.25, 0.051, 5000, SeparationMode::bidirectional);
    CHECK_FALSE(v.separated);
    CHECK(v.margin == doctest::Approx(0.051 - 0.05).epsilon(1e-9));
    // any rho at or below the gap fires immediately on the base channel
    v = kinematic_check_pair(flow, 0.2, 0.25, 0.049, 5000, SeparationMode::forward);
    CHECK(v.separated);
    CHECK(*v.witness_index == 0);
    CHECK(v.channel == Channel::base_distance);
    CHECK_THROWS_AS(rotation_smooth_suspension(kGoldenAlpha, 1.0), ParameterError);
}

TEST_CASE("catalog ids round trip") {
    for (const auto& [id, name] : example_ids()) {
        CHECK(example_id_from_string(name) == id);
        CHECK_FALSE(example_description(id).empty());
    }
    CHECK_THROWS_AS(example_id_from_string("NoSuchThing"), ConfigError);
}
