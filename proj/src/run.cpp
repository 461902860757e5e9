#include "explab/run.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "explab/annulus_robust.hpp"
#include "explab/csv.hpp"
#include "explab/denjoy_koksma.hpp"
#include "explab/frechet.hpp"
#include "explab/separation.hpp"

namespace explab {

using nlohmann::json;

namespace {

// Config-schema random source: mt19937_64 with the 53-bit mantissa transform,
// identical across platforms.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(long long seed) : gen(static_cast<std::uint64_t>(seed)) {}
    double next() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
};

SeparationMode mode_from(const json& params) {
    const std::string m = params["mode"].get<std::string>();
    if (m == "forward") return SeparationMode::forward;
    if (m == "backward") return SeparationMode::backward;
    return SeparationMode::bidirectional;
}

std::string default_path(Operation op) {
    switch (op) {
        case Operation::suspension_check:
        case Operation::frechet:
        case Operation::green_check:
        case Operation::robust_criterion: return to_string(op) + ".json";
        default: return to_string(op) + ".csv";
    }
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << j.dump(2) << '\n';
}

double resolve_pair_entry(const json& e, const BuiltExample& built) {
    if (e.is_number()) return e.get<double>();
    const std::string s = e.get<std::string>();
    if (!built.ks) throw ConfigError("parameters: \"0-\"/\"0+\" pairs need the KSMinimal example");
    return s == "0-" ? built.ks->zero_minus : built.ks->zero_plus;
}

std::pair<double, double> default_suspension_pair(const BuiltExample& built) {
    if (built.ks) return {built.ks->zero_minus, built.ks->zero_plus};
    const BaseSpace& b = built.flow->base;
    if (std::holds_alternative<NegationMap>(built.flow->map)) {
        // the characteristic pairs of an involution are (x, -x)
        const auto* iv = std::get_if<Interval>(&b);
        const double x = iv ? 0.2 * iv->hi : 0.2;
        return {x, -x};
    }
    if (const auto* iv = std::get_if<Interval>(&b))
        return {iv->lo + 0.25 * (iv->hi - iv->lo), iv->lo + 0.75 * (iv->hi - iv->lo)};
    if (const auto* fs = std::get_if<FiniteSet>(&b))
        return {fs->points.front(), fs->points.back()};
    return {0.25, 0.75};
}

std::pair<double, double> suspension_pair(const json& params, const BuiltExample& built) {
    if (!params.contains("pair")) return default_suspension_pair(built);
    return {resolve_pair_entry(params["pair"][0], built),
            resolve_pair_entry(params["pair"][1], built)};
}

double default_rho(const SuspensionFlow& flow) {
    return 0.5 * min_time_on_grid(flow.time, flow.base);
}

json verdict_to_json(const SeparationVerdict& v) {
    json j;
    j["separated"] = v.separated;
    if (v.witness_time) j["witness_time"] = *v.witness_time;
    if (v.witness_index) j["witness_index"] = *v.witness_index;
    j["threshold"] = v.threshold;
    j["horizon"] = v.horizon;
    j["channel"] = to_string(v.channel);
    j["margin"] = v.margin;
    return j;
}

std::string witness_cell(const SeparationVerdict& v) {
    if (v.witness_time) return fmt_double(*v.witness_time);
    if (v.witness_index) return fmt_int(*v.witness_index);
    return "";
}

std::vector<std::pair<double, double>> random_suspension_pairs(const SuspensionFlow& flow,
                                                               const json& r, Rng& rng) {
    const long long count = r["count"].get<long long>();
    const double min_gap = r["min_gap"].get<double>();
    const double max_gap = r["max_gap"].get<double>();
    double lo = 0.0, hi = 1.0;
    bool circle = true;
    if (const auto* iv = std::get_if<Interval>(&flow.base)) {
        lo = iv->lo;
        hi = iv->hi;
        circle = false;
    }
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        const double x = lo + rng.next() * (hi - lo);
        const double gap = min_gap + rng.next() * (max_gap - min_gap);
        double y;
        if (circle)
            y = frac01(x + gap);
        else
            y = (x + gap <= hi) ? x + gap : x - gap;
        pairs.emplace_back(x, y);
    }
    return pairs;
}

std::vector<std::pair<Point2, Point2>> random_field_pairs(const VectorFieldSpec& spec,
                                                          const json& r, Rng& rng) {
    const long long count = r["count"].get<long long>();
    const double min_gap = r["min_gap"].get<double>();
    const double max_gap = r["max_gap"].get<double>();
    std::vector<std::pair<Point2, Point2>> pairs;
    pairs.reserve(static_cast<std::size_t>(count));
    const double two_pi = 2.0 * std::numbers::pi;
    for (long long i = 0; i < count; ++i) {
        Point2 a;
        if (const auto* an = std::get_if<Annulus>(&spec.domain)) {
            const double r2 = an->r_in * an->r_in +
                              rng.next() * (an->r_out * an->r_out - an->r_in * an->r_in);
            const double th = two_pi * rng.next();
            a = {std::sqrt(r2) * std::cos(th), std::sqrt(r2) * std::sin(th)};
        } else if (const auto* d = std::get_if<Disc>(&spec.domain)) {
            const double rr = d->radius * std::sqrt(rng.next());
            const double th = two_pi * rng.next();
            a = {rr * std::cos(th), rr * std::sin(th)};
        } else {
            a = {rng.next(), rng.next()};
        }
        Point2 b;
        for (int tries = 0;; ++tries) {
            const double gap = min_gap + rng.next() * (max_gap - min_gap);
            const double th = two_pi * rng.next();
            b = {a.x + gap * std::cos(th), a.y + gap * std::sin(th)};
            b = domain_reduce(spec.domain, b);
            if (domain_contains(spec.domain, b)) break;
            if (tries > 1000)
                throw ParameterError("random pair generation: cannot place partner in domain");
        }
        pairs.emplace_back(a, b);
    }
    return pairs;
}

RadialProfile profile_from(const json& p) {
    const std::string name = p["name"].get<std::string>();
    if (name == "linear") return profile_linear();
    if (name == "constant") return profile_constant(p["c"].get<double>());
    return profile_linear_plus_sin(p["eps"].get<double>());
}

ConservativeFieldSpec conservative_from(const json& params) {
    ConservativeFieldSpec X = make_profile_field(profile_from(params["profile"]),
                                                 params["r_in"].get<double>(),
                                                 params["r_out"].get<double>());
    validate_conservative(X);
    return X;
}

} // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParameterError*>(&e)) return 2;
    if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const SingularityError*>(&e) ||
        dynamic_cast<const EscapeError*>(&e))
        return 3;
    return 1;
}

RunResult run(const ExperimentConfig& cfg, const std::string& out_override,
              std::optional<long long> seed_override) {
    ExperimentConfig c = cfg;
    if (seed_override) {
        c.seed = *seed_override;
        c.seed_given = true;
    }
    RunResult res;
    res.output_path = !out_override.empty() ? out_override
                      : c.output            ? c.output->path
                                            : default_path(c.operation);
    const json& params = c.parameters;
    std::ostringstream summary;

    const bool annulus_op = c.operation == Operation::annulus_period ||
                            c.operation == Operation::green_check ||
                            c.operation == Operation::robust_criterion;
    const BuiltExample built = annulus_op ? BuiltExample{} : build_example(c);
    Rng rng(c.seed);

    switch (c.operation) {
        case Operation::simulate: {
            const Point2 start{params["start"][0].get<double>(), params["start"][1].get<double>()};
            Trajectory traj = sample_trajectory(*built.field, start, params["horizon"].get<double>(),
                                                params["dt"].get<double>());
            CsvWriter csv(res.output_path);
            csv.row({"t", "x", "y"});
            for (std::size_t i = 0; i < traj.points.size(); ++i)
                csv.row({fmt_double(traj.start_time + static_cast<double>(i) * traj.step),
                         fmt_double(traj.points[i].x), fmt_double(traj.points[i].y)});
            summary << "simulate " << built.field->name << ": " << traj.points.size()
                    << " samples, final=(" << fmt_double(traj.points.back().x) << ","
                    << fmt_double(traj.points.back().y) << ")";
            break;
        }
        case Operation::separation_sweep: {
            const SeparationMode mode = mode_from(params);
            if (built.field) {
                std::vector<std::pair<Point2, Point2>> pairs;
                if (params["pairs"].contains("explicit")) {
                    for (const auto& e : params["pairs"]["explicit"])
                        pairs.push_back({{e[0][0].get<double>(), e[0][1].get<double>()},
                                         {e[1][0].get<double>(), e[1][1].get<double>()}});
                } else {
                    pairs = random_field_pairs(*built.field, params["pairs"]["random"], rng);
                }
                const double delta = params.contains("delta")
                                         ? params["delta"].get<double>()
                                         : 0.1 * domain_diameter(built.field->domain);
                auto rep = pair_sweep(*built.field, pairs, delta, params["horizon"].get<double>(),
                                      params["dt"].get<double>(), mode);
                CsvWriter csv(res.output_path);
                csv.row({"pair_id", "ax", "ay", "bx", "by", "separated", "witness", "channel",
                         "margin", "error"});
                for (const auto& row : rep.rows)
                    csv.row({fmt_int(static_cast<long long>(row.pair_id)), fmt_double(row.a.x),
                             fmt_double(row.a.y), fmt_double(row.b.x), fmt_double(row.b.y),
                             row.verdict.separated ? "1" : "0", witness_cell(row.verdict),
                             to_string(row.verdict.channel), fmt_double(row.verdict.margin),
                             row.error});
                summary << "separation-sweep " << built.field->name << ": "
                        << 100.0 * rep.fraction_separated << "% separated over " << rep.rows.size()
                        << " pairs (delta=" << delta << ", errors=" << rep.errors << ")";
            } else {
                std::vector<std::pair<double, double>> pairs;
                if (params["pairs"].contains("explicit")) {
                    for (const auto& e : params["pairs"]["explicit"])
                        pairs.emplace_back(resolve_pair_entry(e[0], built),
                                           resolve_pair_entry(e[1], built));
                } else {
                    pairs = random_suspension_pairs(*built.flow, params["pairs"]["random"], rng);
                }
                const double rho = params.contains("rho") ? params["rho"].get<double>()
                                                          : default_rho(*built.flow);
                auto rep = pair_sweep(*built.flow, pairs, rho, params["N"].get<long long>(), mode);
                CsvWriter csv(res.output_path);
                csv.row({"pair_id", "x", "y", "separated", "witness", "channel", "margin", "error"});
                for (const auto& row : rep.rows)
                    csv.row({fmt_int(static_cast<long long>(row.pair_id)), fmt_double(row.x),
                             fmt_double(row.y), row.verdict.separated ? "1" : "0",
                             witness_cell(row.verdict), to_string(row.verdict.channel),
                             fmt_double(row.verdict.margin), row.error});
                summary << "separation-sweep: " << 100.0 * rep.fraction_separated
                        << "% separated over " << rep.rows.size() << " pairs (rho=" << rho
                        << ", errors=" << rep.errors << ")";
            }
            break;
        }
        case Operation::suspension_check: {
            const auto [x, y] = suspension_pair(params, built);
            const double rho = params.contains("rho") ? params["rho"].get<double>()
                                                      : default_rho(*built.flow);
            SeparationVerdict v = kinematic_check_pair(*built.flow, x, y, rho,
                                                       params["N"].get<long long>(),
                                                       mode_from(params));
            json out = verdict_to_json(v);
            out["pair"] = {x, y};
            write_json(res.output_path, out);
            summary << "suspension-check: pair (" << fmt_double(x) << "," << fmt_double(y) << ") ";
            if (v.separated)
                summary << "separated at n=" << *v.witness_index << " via " << to_string(v.channel);
            else
                summary << "not separated up to N=" << v.horizon << " (margin " << v.margin << ")";
            break;
        }
        case Operation::series: {
            const auto [x, y] = suspension_pair(params, built);
            SeriesCertificate cert = divergence_partial_sums(
                *built.flow, x, y, params["N"].get<long long>(), params["threshold"].get<double>());
            CsvWriter csv(res.output_path);
            csv.row({"n", "S_n"});
            for (std::size_t n = 0; n < cert.partial_sums.size(); ++n)
                csv.row({fmt_int(static_cast<long long>(n)), fmt_double(cert.partial_sums[n])});
            summary << "series: S_" << cert.partial_sums.size() - 1 << " = "
                    << fmt_double(cert.partial_sums.back());
            if (cert.crossed)
                summary << ", |S| crossed " << cert.threshold << " at n=" << *cert.crossed;
            break;
        }
        case Operation::frechet: {
            const double dt = params["dt"].get<double>();
            Trajectory ta = sample_trajectory(
                *built.field, {params["start_a"][0].get<double>(), params["start_a"][1].get<double>()},
                params["horizon_a"].get<double>(), dt);
            Trajectory tb = sample_trajectory(
                *built.field, {params["start_b"][0].get<double>(), params["start_b"][1].get<double>()},
                params["horizon_b"].get<double>(), dt);
            const double d = discrete_frechet(ta, tb);
            write_json(res.output_path, json{{"frechet", d},
                                             {"points_a", ta.points.size()},
                                             {"points_b", tb.points.size()}});
            summary << "frechet " << built.field->name << ": " << fmt_double(d);
            break;
        }
        case Operation::denjoy_koksma: {
            const int n_max = static_cast<int>(params["n_max"].get<long long>());
            const long grid = static_cast<long>(params["grid"].get<long long>());
            CsvWriter csv(res.output_path);
            csv.row({"n", "q_n", "g_n"});
            double last = 0.0;
            for (int n = 1; n <= n_max; ++n) {
                const long long qn = denjoy_koksma_qn(*built.flow, n);
                last = denjoy_koksma_gap(*built.flow, n, grid);
                csv.row({fmt_int(n), fmt_int(qn), fmt_double(last)});
            }
            summary << "denjoy-koksma: g_" << n_max << " = " << fmt_double(last);
            break;
        }
        case Operation::annulus_period: {
            ConservativeFieldSpec X = conservative_from(params);
            const Annulus& a = std::get<Annulus>(X.underlying.domain);
            const int nr = static_cast<int>(params["radii"].get<long long>());
            const int quad_n = static_cast<int>(params["quad_n"].get<long long>());
            const bool direct = params["direct"].get<bool>();
            CsvWriter csv(res.output_path);
            csv.row({"r", "flux_period", "direct_period", "residual"});
            double max_res = 0.0;
            for (int i = 0; i < nr; ++i) {
                const double r = a.r_in + (a.r_out - a.r_in) * i / static_cast<double>(nr - 1);
                PeriodReport rep = orbit_period_flux(X, CircleOrbit{r}, quad_n, direct,
                                                     params["direct_dt"].get<double>());
                csv.row({fmt_double(r), fmt_double(rep.flux_period),
                         rep.direct_period ? fmt_double(*rep.direct_period) : "",
                         rep.direct_period ? fmt_double(rep.residual) : ""});
                max_res = std::max(max_res, rep.residual);
            }
            summary << "annulus-period " << X.underlying.name << ": " << nr << " radii";
            if (direct) summary << ", max flux/direct residual " << fmt_double(max_res);
            break;
        }
        case Operation::green_check: {
            ConservativeFieldSpec X = conservative_from(params);
            const double residual =
                green_check(X, params["r1"].get<double>(), params["r2"].get<double>(),
                            static_cast<int>(params["quad_n"].get<long long>()));
            write_json(res.output_path, json{{"residual", residual}});
            summary << "green-check " << X.underlying.name << ": residual "
                    << fmt_double(residual);
            break;
        }
        case Operation::robust_criterion: {
            ConservativeFieldSpec X = conservative_from(params);
            const int grid_n = static_cast<int>(params["grid_n"].get<long long>());
            CriterionVerdict v = robust_criterion(X, grid_n);
            const bool want_csv = (c.output && c.output->format == "csv") ||
                                  res.output_path.ends_with(".csv");
            if (want_csv) {
                // the scanned polar grid of div Z values
                const Annulus& a = std::get<Annulus>(X.underlying.domain);
                auto div_at = [&](double r, double th) {
                    if (X.profile) return div_z_closed(*X.profile, r);
                    const double rs = std::min(std::max(r, a.r_in + 2e-4), a.r_out - 2e-4);
                    return div_z_numeric(X, {rs * std::cos(th), rs * std::sin(th)});
                };
                CsvWriter csv(res.output_path);
                csv.row({"r", "theta", "div_z"});
                for (int ir = 0; ir < grid_n; ++ir) {
                    const double r =
                        a.r_in + (a.r_out - a.r_in) * ir / static_cast<double>(grid_n - 1);
                    for (int it = 0; it < grid_n; ++it) {
                        const double th = 2.0 * std::numbers::pi * it / grid_n;
                        csv.row({fmt_double(r), fmt_double(th), fmt_double(div_at(r, th))});
                    }
                }
            } else {
                json out;
                out["satisfied"] = v.satisfied;
                out["min_abs_div"] = v.min_abs_div;
                out["argmin"] = {{"r", v.argmin_r}, {"theta", v.argmin_theta},
                                 {"x", v.argmin.x}, {"y", v.argmin.y}};
                out["periods_strictly_monotone"] = v.periods_strictly_monotone;
                out["period_direction"] = v.period_direction;
                write_json(res.output_path, out);
            }
            summary << "robust-criterion " << X.underlying.name << ": "
                    << (v.satisfied ? "satisfied" : "not satisfied")
                    << ", min|divZ|=" << fmt_double(v.min_abs_div) << " at r="
                    << fmt_double(v.argmin_r);
            break;
        }
    }

    res.summary = summary.str();
    std::cout << res.summary << " -> " << res.output_path << std::endl;
    return res;
}

} // namespace explab
