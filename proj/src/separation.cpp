#include "explab/separation.hpp"

#include <algorithm>
#include <cmath>

namespace explab {

std::string to_string(SeparationMode m) {
    switch (m) {
        case SeparationMode::forward: return "forward";
        case SeparationMode::backward: return "backward";
        default: return "bidirectional";
    }
}

std::string to_string(Channel c) {
    switch (c) {
        case Channel::base_distance: return "base-distance";
        case Channel::time_gap: return "time-gap";
        default: return "";
    }
}

namespace {

// Forward scan of one direction for separation_time. Returns the verdict with
// unsigned witness time; the caller applies the sign.
SeparationVerdict scan_field_direction(const VectorFieldSpec& spec, Point2 a, Point2 b,
                                       double delta, double horizon, double dt) {
    SeparationVerdict v;
    v.threshold = delta;
    v.horizon = horizon;
    const long n = static_cast<long>(std::floor(horizon / dt));
    Point2 pa = domain_reduce(spec.domain, a);
    Point2 pb = domain_reduce(spec.domain, b);
    double max_d = 0.0;
    for (long k = 0;; ++k) {
        const double d = domain_distance(spec.domain, pa, pb);
        max_d = std::max(max_d, d);
        if (d >= delta) {
            v.separated = true;
            v.witness_time = static_cast<double>(k) * dt;
            v.channel = Channel::base_distance;
            break;
        }
        if (k == n) break;
        pa = step_rk4(spec, pa, dt);
        pb = step_rk4(spec, pb, dt);
    }
    v.margin = delta - max_d;
    return v;
}

} // namespace

SeparationVerdict separation_time(const VectorFieldSpec& spec, Point2 a, Point2 b, double delta,
                                  double horizon, double dt, SeparationMode mode) {
    if (!(delta > 0.0) || !(horizon > 0.0) || !(dt > 0.0))
        throw ParameterError("separation_time: delta, horizon, dt must be positive");
    if (mode == SeparationMode::forward) return scan_field_direction(spec, a, b, delta, horizon, dt);
    if (mode == SeparationMode::backward) {
        SeparationVerdict v = scan_field_direction(reversed(spec), a, b, delta, horizon, dt);
        if (v.witness_time) v.witness_time = -*v.witness_time;
        return v;
    }
    SeparationVerdict fwd = scan_field_direction(spec, a, b, delta, horizon, dt);
    SeparationVerdict bwd = scan_field_direction(reversed(spec), a, b, delta, horizon, dt);
    if (bwd.witness_time) bwd.witness_time = -*bwd.witness_time;
    SeparationVerdict out = fwd;
    if (bwd.separated &&
        (!fwd.separated || std::fabs(*bwd.witness_time) < std::fabs(*fwd.witness_time)))
        out = bwd;
    out.margin = std::min(fwd.margin, bwd.margin);
    return out;
}

namespace {

// One walker per direction: holds the current iterates and the inclusive
// running time gap.
struct PairWalker {
    double x, y;
    double gap = 0.0;

    // Folds the roof values at the current iterates into the inclusive gap.
    void absorb_forward(const SuspensionFlow& f) {
        gap += eval_time(f.time, x) - eval_time(f.time, y);
    }
    void step_forward(const SuspensionFlow& f) {
        x = map_forward(f.map, x);
        y = map_forward(f.map, y);
    }
    void step_backward(const SuspensionFlow& f) {
        x = map_inverse(f.map, x);
        y = map_inverse(f.map, y);
        gap -= eval_time(f.time, x) - eval_time(f.time, y);
    }
};

struct IndexCheck {
    bool fired = false;
    Channel channel = Channel::none;
    double stat = 0.0; // max(base distance, |time gap|) at this index
};

IndexCheck check_index(const SuspensionFlow& flow, double bx, double by, double gap, double rho) {
    IndexCheck c;
    const double d = base_distance(flow.base, bx, by);
    const double g = std::fabs(gap);
    c.stat = std::max(d, g);
    if (d >= rho) {
        c.fired = true;
        c.channel = Channel::base_distance;
    } else if (g >= rho) {
        c.fired = true;
        c.channel = Channel::time_gap;
    }
    return c;
}

} // namespace

SeparationVerdict kinematic_check_pair(const SuspensionFlow& flow, double x, double y, double rho,
                                       long N, SeparationMode mode) {
    if (!(rho > 0.0) || N < 1) throw ParameterError("kinematic_check_pair: need rho > 0, N >= 1");
    SeparationVerdict v;
    v.threshold = rho;
    v.horizon = static_cast<double>(N);
    double max_stat = 0.0;

    auto conclude = [&](long index, Channel ch) {
        v.separated = true;
        v.witness_index = index;
        v.channel = ch;
    };

    const bool do_fwd = mode != SeparationMode::backward;
    const bool do_bwd = mode != SeparationMode::forward;

    PairWalker fwd{x, y};
    PairWalker bwd{x, y};

    // Index 0 (shared by both directions).
    fwd.absorb_forward(flow);
    {
        IndexCheck c = check_index(flow, fwd.x, fwd.y, do_fwd ? fwd.gap : 0.0, rho);
        max_stat = std::max(max_stat, c.stat);
        if (c.fired) {
            conclude(0, c.channel);
            v.margin = rho - max_stat;
            return v;
        }
    }
    for (long n = 1; n <= N && !v.separated; ++n) {
        if (do_fwd) {
            fwd.step_forward(flow);
            fwd.absorb_forward(flow);
            IndexCheck c = check_index(flow, fwd.x, fwd.y, fwd.gap, rho);
            max_stat = std::max(max_stat, c.stat);
            if (c.fired) {
                conclude(n, c.channel);
                break;
            }
        }
        if (do_bwd) {
            bwd.step_backward(flow);
            IndexCheck c = check_index(flow, bwd.x, bwd.y, bwd.gap, rho);
            max_stat = std::max(max_stat, c.stat);
            if (c.fired) {
                conclude(-n, c.channel);
                break;
            }
        }
    }
    v.margin = rho - max_stat;
    return v;
}

SeriesCertificate divergence_partial_sums(const SuspensionFlow& flow, double x, double y, long N,
                                          double threshold) {
    if (x == y) throw ParameterError("divergence_partial_sums: x and y must differ");
    if (N < 1) throw ParameterError("divergence_partial_sums: N must be >= 1");
    SeriesCertificate cert;
    cert.threshold = threshold;
    cert.partial_sums.reserve(static_cast<std::size_t>(N) + 1);
    double xi = x, yi = y, acc = 0.0;
    for (long k = 0; k <= N; ++k) {
        acc += eval_time(flow.time, xi) - eval_time(flow.time, yi);
        cert.partial_sums.push_back(acc);
        if (!cert.crossed && std::fabs(acc) > threshold) cert.crossed = k;
        xi = map_forward(flow.map, xi);
        yi = map_forward(flow.map, yi);
    }
    return cert;
}

namespace {

template <class Row>
void finish_report(SweepReport<Row>& rep) {
    std::size_t separated = 0, valid = 0;
    for (const Row& r : rep.rows) {
        if (!r.error.empty()) {
            ++rep.errors;
            continue;
        }
        ++valid;
        if (r.verdict.separated) {
            ++separated;
            double w = r.verdict.witness_time ? std::fabs(*r.verdict.witness_time)
                                              : std::fabs(static_cast<double>(*r.verdict.witness_index));
            if (!rep.min_witness || w < *rep.min_witness) rep.min_witness = w;
            if (!rep.max_witness || w > *rep.max_witness) rep.max_witness = w;
        } else {
            rep.by_margin.push_back(r.pair_id);
        }
    }
    rep.fraction_separated = valid ? static_cast<double>(separated) / static_cast<double>(valid) : 0.0;
    std::stable_sort(rep.by_margin.begin(), rep.by_margin.end(), [&](std::size_t a, std::size_t b) {
        return rep.rows[a].verdict.margin < rep.rows[b].verdict.margin;
    });
}

} // namespace

SweepReport<FieldSweepRow> pair_sweep(const VectorFieldSpec& spec,
                                      const std::vector<std::pair<Point2, Point2>>& pairs,
                                      double delta, double horizon, double dt, SeparationMode mode,
                                      par::Exec exec) {
    if (pairs.empty()) throw ParameterError("pair_sweep: empty pair list");
    SweepReport<FieldSweepRow> rep;
    rep.rows.resize(pairs.size());
    par::index_apply(
        pairs.size(),
        [&](std::size_t i) {
            FieldSweepRow& row = rep.rows[i];
            row.pair_id = i;
            row.a = pairs[i].first;
            row.b = pairs[i].second;
            try {
                row.verdict = separation_time(spec, row.a, row.b, delta, horizon, dt, mode);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        },
        exec);
    finish_report(rep);
    return rep;
}

SweepReport<SuspensionSweepRow> pair_sweep(const SuspensionFlow& flow,
                                           const std::vector<std::pair<double, double>>& pairs,
                                           double rho, long N, SeparationMode mode, par::Exec exec) {
    if (pairs.empty()) throw ParameterError("pair_sweep: empty pair list");
    SweepReport<SuspensionSweepRow> rep;
    rep.rows.resize(pairs.size());
    par::index_apply(
        pairs.size(),
        [&](std::size_t i) {
            SuspensionSweepRow& row = rep.rows[i];
            row.pair_id = i;
            row.x = pairs[i].first;
            row.y = pairs[i].second;
            try {
                row.verdict = kinematic_check_pair(flow, row.x, row.y, rho, N, mode);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        },
        exec);
    finish_report(rep);
    return rep;
}

} // namespace explab
