#include "explab/split_circle.hpp"

#include <algorithm>
#include <cmath>

#include "explab/errors.hpp"

namespace explab {

namespace {

struct Slot {
    double pos; // original coordinate frac(n*alpha)
    long index;
    double raw_len;
};

} // namespace

double SplitCircle::embed(double x) const {
    double shift = 0.0;
    for (const auto& iv : intervals) {
        if (iv.orig_pos >= x) break;
        shift += iv.raw_len;
    }
    return (x + shift) * scale;
}

const SplitInterval& SplitCircle::interval(long orbit_index) const {
    auto it = by_orbit_index.find(orbit_index);
    if (it == by_orbit_index.end())
        throw ParameterError("split circle: orbit index not in insertion schedule");
    return intervals[it->second];
}

SplitCircle build_split_circle(double alpha, const std::vector<Insertion>& schedule) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("split circle: alpha must be in (0,1)");
    if (schedule.empty()) throw ParameterError("split circle: empty insertion schedule");

    std::vector<Slot> slots;
    slots.reserve(schedule.size());
    double total_raw = 0.0;
    for (const auto& ins : schedule) {
        if (!(ins.raw_length > 0.0))
            throw ParameterError("split circle: inserted lengths must be positive");
        double pos = frac01(std::fmod(static_cast<double>(ins.orbit_index) * alpha, 1.0));
        slots.push_back({pos, ins.orbit_index, ins.raw_length});
        total_raw += ins.raw_length;
    }
    if (total_raw >= 0.5)
        throw ParameterError("split circle: total inserted length must stay below 0.5");

    std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.pos < b.pos; });
    for (std::size_t i = 1; i < slots.size(); ++i)
        if (!(slots[i - 1].pos < slots[i].pos))
            throw ParameterError("split circle: coincident orbit points (alpha effectively rational)");

    SplitCircle sc;
    sc.alpha = alpha;
    sc.scale = 1.0 / (1.0 + total_raw);

    // Left endpoint of the interval at slot i: (pos_i + sum of lengths before) * scale.
    sc.intervals.reserve(slots.size());
    double prefix = 0.0;
    for (const auto& s : slots) {
        double left = (s.pos + prefix) * sc.scale;
        double right = (s.pos + prefix + s.raw_len) * sc.scale;
        sc.intervals.push_back({s.index, s.pos, s.raw_len, left, right});
        prefix += s.raw_len;
    }
    sc.total_inserted = total_raw * sc.scale;
    for (std::size_t i = 0; i < sc.intervals.size(); ++i)
        sc.by_orbit_index[sc.intervals[i].orbit_index] = i;

    // Breakpoints: endpoints of every interval whose successor is also split.
    std::vector<std::pair<double, double>> pairs; // (dom, img)
    for (const auto& iv : sc.intervals) {
        auto next = sc.by_orbit_index.find(iv.orbit_index + 1);
        if (next == sc.by_orbit_index.end()) continue;
        const SplitInterval& succ = sc.intervals[next->second];
        pairs.emplace_back(iv.left, succ.left);
        pairs.emplace_back(iv.right, succ.right);
    }
    if (pairs.size() < 2)
        throw ParameterError("split circle: schedule has no consecutive orbit indices");
    std::sort(pairs.begin(), pairs.end());
    std::vector<double> dom, img;
    dom.reserve(pairs.size());
    img.reserve(pairs.size());
    for (const auto& [d, g] : pairs) {
        dom.push_back(d);
        img.push_back(g);
    }
    sc.map = make_piecewise_affine_circle_map(std::move(dom), std::move(img));
    return sc;
}

} // namespace explab
