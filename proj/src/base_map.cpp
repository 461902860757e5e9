#include "explab/base_map.hpp"

#include <algorithm>
#include <cmath>

#include "explab/errors.hpp"

namespace explab {

namespace {

// Largest i in [first,last) with v[i] <= x; requires v[first] <= x.
std::size_t seg_before(const std::vector<double>& v, std::size_t first, std::size_t last, double x) {
    auto it = std::upper_bound(v.begin() + static_cast<long>(first),
                               v.begin() + static_cast<long>(last), x);
    return static_cast<std::size_t>(it - v.begin()) - 1;
}

} // namespace

// Lifted image sequence: L[i] = img[i] + (i >= wrap ? 1 : 0), strictly
// increasing from L[0] = img[0], closing at img[0] + 1 after one full turn.

double PiecewiseAffineCircleMap::forward(double x) const {
    const auto& d = *dom;
    const auto& g = *img;
    const std::size_t n = d.size();
    double u = frac01(x);
    std::size_t i;
    if (u < d[0]) {
        i = n - 1; // wrapped tail of the last segment
        u += 1.0;
    } else {
        i = seg_before(d, 0, n, u);
        if (u == d[i]) return g[i];
    }
    auto lifted = [&](std::size_t k) { return g[k] + (k >= wrap ? 1.0 : 0.0); };
    const double lo = d[i];
    const double hi = (i + 1 < n) ? d[i + 1] : d[0] + 1.0;
    const double glo = lifted(i);
    const double ghi = (i + 1 < n) ? lifted(i + 1) : g[0] + 1.0;
    const double t = (u - lo) / (hi - lo);
    return frac01(glo + t * (ghi - glo));
}

double PiecewiseAffineCircleMap::inverse(double y) const {
    const auto& d = *dom;
    const auto& g = *img;
    const std::size_t n = d.size();
    const double v = frac01(y);
    std::size_t i;
    double vl;
    if (v >= g[0]) {
        i = seg_before(g, 0, wrap, v);
        if (v == g[i]) return d[i];
        vl = v;
    } else if (wrap < n && v >= g[wrap]) {
        i = seg_before(g, wrap, n, v);
        if (v == g[i]) return d[i];
        vl = v + 1.0;
    } else {
        i = wrap - 1; // segment crossing the integer lift
        vl = v + 1.0;
    }
    auto lifted = [&](std::size_t k) { return g[k] + (k >= wrap ? 1.0 : 0.0); };
    const double lo = d[i];
    const double hi = (i + 1 < n) ? d[i + 1] : d[0] + 1.0;
    const double glo = lifted(i);
    const double ghi = (i + 1 < n) ? lifted(i + 1) : g[0] + 1.0;
    const double t = (vl - glo) / (ghi - glo);
    return frac01(lo + t * (hi - lo));
}

PiecewiseAffineCircleMap make_piecewise_affine_circle_map(std::vector<double> dom,
                                                          std::vector<double> img) {
    if (dom.size() != img.size() || dom.size() < 2)
        throw ParameterError("circle map: need matching breakpoint lists with >= 2 entries");
    const std::size_t n = dom.size();
    for (std::size_t i = 1; i < n; ++i)
        if (!(dom[i - 1] < dom[i]))
            throw ParameterError("circle map: domain breakpoints must be strictly increasing");
    for (double v : img)
        if (!(v >= 0.0 && v < 1.0))
            throw ParameterError("circle map: image breakpoints must be reduced to [0,1)");
    // The lifted image sequence must increase with exactly one wrap.
    std::size_t wrap = n;
    for (std::size_t i = 1; i < n; ++i) {
        if (img[i] < img[0]) {
            wrap = i;
            break;
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        const bool ok = (i < wrap) ? (img[i] > img[i - 1])
                                   : (i == wrap ? img[i] < img[0] : img[i] > img[i - 1]);
        if (!ok || (i > wrap && img[i] >= img[0]))
            throw ParameterError("circle map: image breakpoints are not circularly ordered");
    }
    PiecewiseAffineCircleMap m;
    m.dom = std::make_shared<const std::vector<double>>(std::move(dom));
    m.img = std::make_shared<const std::vector<double>>(std::move(img));
    m.wrap = wrap;
    return m;
}

double map_forward(const BaseMap& m, double x) {
    if (std::holds_alternative<IdentityMap>(m)) return x;
    if (std::holds_alternative<HalvingMap>(m)) return x / 2.0;
    if (std::holds_alternative<NegationMap>(m)) return -x;
    if (const auto* r = std::get_if<RotationMap>(&m)) return frac01(x + r->alpha);
    if (const auto* p = std::get_if<FinitePermutationMap>(&m)) {
        for (std::size_t i = 0; i < p->points.size(); ++i)
            if (p->points[i] == x) return p->points[p->table[i]];
        throw DomainError("finite permutation: point not in base");
    }
    return std::get<PiecewiseAffineCircleMap>(m).forward(x);
}

double map_inverse(const BaseMap& m, double x) {
    if (std::holds_alternative<IdentityMap>(m)) return x;
    if (std::holds_alternative<HalvingMap>(m)) return 2.0 * x;
    if (std::holds_alternative<NegationMap>(m)) return -x;
    if (const auto* r = std::get_if<RotationMap>(&m)) return frac01(x - r->alpha);
    if (const auto* p = std::get_if<FinitePermutationMap>(&m)) {
        for (std::size_t i = 0; i < p->points.size(); ++i)
            if (p->points[p->table[i]] == x) return p->points[i];
        throw DomainError("finite permutation: point not in base");
    }
    return std::get<PiecewiseAffineCircleMap>(m).inverse(x);
}

double base_iterate(const BaseMap& m, double x, long n) {
    if (n == 0) return x;
    if (const auto* r = std::get_if<RotationMap>(&m)) {
        // One modular step, no error accumulation over n.
        double shift = std::fmod(static_cast<double>(n) * r->alpha, 1.0);
        if (shift < 0.0) shift += 1.0;
        return frac01(x + shift);
    }
    if (std::holds_alternative<IdentityMap>(m)) return x;
    if (std::holds_alternative<HalvingMap>(m)) return std::ldexp(x, static_cast<int>(-n));
    if (std::holds_alternative<NegationMap>(m)) return (n % 2 == 0) ? x : -x;
    double y = x;
    if (n > 0)
        for (long i = 0; i < n; ++i) y = map_forward(m, y);
    else
        for (long i = 0; i < -n; ++i) y = map_inverse(m, y);
    return y;
}

} // namespace explab
