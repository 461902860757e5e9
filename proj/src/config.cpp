#include "explab/config.hpp"

#include <set>

namespace explab {

using nlohmann::json;

std::string to_string(Operation op) {
    switch (op) {
        case Operation::simulate: return "simulate";
        case Operation::separation_sweep: return "separation-sweep";
        case Operation::suspension_check: return "suspension-check";
        case Operation::series: return "series";
        case Operation::frechet: return "frechet";
        case Operation::denjoy_koksma: return "denjoy-koksma";
        case Operation::annulus_period: return "annulus-period";
        case Operation::green_check: return "green-check";
        default: return "robust-criterion";
    }
}

Operation operation_from_string(const std::string& name) {
    for (Operation op : {Operation::simulate, Operation::separation_sweep,
                         Operation::suspension_check, Operation::series, Operation::frechet,
                         Operation::denjoy_koksma, Operation::annulus_period,
                         Operation::green_check, Operation::robust_criterion})
        if (to_string(op) == name) return op;
    throw ConfigError("operation: unknown operation '" + name + "'");
}

namespace {

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected a JSON object");
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& keys) {
    for (const auto& item : obj.items())
        if (!keys.count(item.key()))
            throw ConfigError(path + "." + item.key() + ": unknown key");
}

double get_num(const json& obj, const std::string& path, const std::string& key,
               std::optional<double> def = {}) {
    if (!obj.contains(key)) {
        if (def) return *def;
        throw ConfigError(path + "." + key + ": missing required parameter");
    }
    if (!obj[key].is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return obj[key].get<double>();
}

long long get_int(const json& obj, const std::string& path, const std::string& key,
                  std::optional<long long> def = {}) {
    if (!obj.contains(key)) {
        if (def) return *def;
        throw ConfigError(path + "." + key + ": missing required parameter");
    }
    if (!obj[key].is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
    return obj[key].get<long long>();
}

std::string get_str(const json& obj, const std::string& path, const std::string& key,
                    std::optional<std::string> def = {}) {
    if (!obj.contains(key)) {
        if (def) return *def;
        throw ConfigError(path + "." + key + ": missing required parameter");
    }
    if (!obj[key].is_string()) throw ConfigError(path + "." + key + ": expected a string");
    return obj[key].get<std::string>();
}

bool get_bool(const json& obj, const std::string& path, const std::string& key, bool def) {
    if (!obj.contains(key)) return def;
    if (!obj[key].is_boolean()) throw ConfigError(path + "." + key + ": expected a boolean");
    return obj[key].get<bool>();
}

json norm_point(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(path + ": expected [x, y]");
    return json::array({j[0].get<double>(), j[1].get<double>()});
}

// Pair entries are base coordinates, or the strings "0-"/"0+" for the
// KSMinimal splitting states.
json norm_pair_entry(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "0-" || s == "0+") return s;
        throw ConfigError(path + ": expected a number or \"0-\"/\"0+\"");
    }
    throw ConfigError(path + ": expected a number or \"0-\"/\"0+\"");
}

json norm_mode(const json& obj, const std::string& path) {
    const std::string m = get_str(obj, path, "mode", std::string("forward"));
    if (m != "forward" && m != "backward" && m != "bidirectional")
        throw ConfigError(path + ".mode: expected forward|backward|bidirectional");
    return m;
}

json norm_profile(const json& obj, const std::string& path) {
    require_object(obj, path);
    reject_unknown(obj, path, {"name", "c", "eps"});
    const std::string name = get_str(obj, path, "name");
    json out;
    out["name"] = name;
    if (name == "constant") {
        out["c"] = get_num(obj, path, "c", 1.0);
    } else if (name == "linear_plus_sin") {
        out["eps"] = get_num(obj, path, "eps", 0.01);
    } else if (name != "linear") {
        throw ConfigError(path + ".name: unknown profile (linear|constant|linear_plus_sin)");
    }
    return out;
}

json norm_base(const json& obj, const std::string& path) {
    require_object(obj, path);
    reject_unknown(obj, path, {"kind", "lo", "hi", "points"});
    const std::string kind = get_str(obj, path, "kind");
    json out;
    out["kind"] = kind;
    if (kind == "interval") {
        out["lo"] = get_num(obj, path, "lo");
        out["hi"] = get_num(obj, path, "hi");
    } else if (kind == "finite_set") {
        if (!obj.contains("points") || !obj["points"].is_array())
            throw ConfigError(path + ".points: expected an array of numbers");
        out["points"] = obj["points"];
    } else if (kind != "circle") {
        throw ConfigError(path + ".kind: expected interval|circle|finite_set");
    }
    return out;
}

json norm_time(const json& obj, const std::string& path) {
    require_object(obj, path);
    reject_unknown(obj, path, {"kind", "c", "amplitude", "pos", "val", "fill"});
    const std::string kind = get_str(obj, path, "kind");
    json out;
    out["kind"] = kind;
    if (kind == "constant") {
        out["c"] = get_num(obj, path, "c", 1.0);
    } else if (kind == "sinusoidal") {
        out["amplitude"] = get_num(obj, path, "amplitude", 0.0);
    } else if (kind == "piecewise_linear") {
        if (!obj.contains("pos") || !obj["pos"].is_array() || !obj.contains("val") ||
            !obj["val"].is_array())
            throw ConfigError(path + ": piecewise_linear needs pos[] and val[]");
        out["pos"] = obj["pos"];
        out["val"] = obj["val"];
        out["fill"] = get_num(obj, path, "fill", 1.0);
    } else if (kind != "reciprocal" && kind != "quadratic") {
        throw ConfigError(path + ".kind: expected constant|reciprocal|quadratic|sinusoidal|piecewise_linear");
    }
    return out;
}

json norm_map(const json& obj, const std::string& path) {
    require_object(obj, path);
    reject_unknown(obj, path, {"kind", "alpha"});
    const std::string kind = get_str(obj, path, "kind");
    json out;
    out["kind"] = kind;
    if (kind == "rotation") {
        out["alpha"] = get_num(obj, path, "alpha");
    } else if (kind != "identity" && kind != "halving" && kind != "negation") {
        throw ConfigError(path + ".kind: expected identity|halving|negation|rotation");
    }
    return out;
}

json norm_example_params(ExampleId id, const json& in) {
    const std::string path = "example_params";
    require_object(in, path);
    json out = json::object();
    switch (id) {
        case ExampleId::PeriodicBand:
        case ExampleId::RigidBand:
        case ExampleId::MoebiusSuspension:
            reject_unknown(in, path, {});
            break;
        case ExampleId::TorusFakeSaddle:
            reject_unknown(in, path, {"alpha", "p"});
            out["alpha"] = get_num(in, path, "alpha", kGoldenAlpha);
            out["p"] = in.contains("p") ? norm_point(in["p"], path + ".p")
                                        : json::array({0.5, 0.5});
            break;
        case ExampleId::DiscReciprocal:
            reject_unknown(in, path, {"x_min"});
            out["x_min"] = get_num(in, path, "x_min", 1e-3);
            break;
        case ExampleId::BandKnots:
            reject_unknown(in, path, {"n_max"});
            out["n_max"] = get_int(in, path, "n_max", 30);
            break;
        case ExampleId::IdentitySuspension:
            reject_unknown(in, path, {"base", "time"});
            if (!in.contains("base") || !in.contains("time"))
                throw ConfigError(path + ": IdentitySuspension needs base and time");
            out["base"] = norm_base(in["base"], path + ".base");
            out["time"] = norm_time(in["time"], path + ".time");
            break;
        case ExampleId::DenjoySuspension:
            reject_unknown(in, path, {"alpha", "interval_length", "n_max"});
            out["alpha"] = get_num(in, path, "alpha", kGoldenAlpha);
            out["interval_length"] = get_num(in, path, "interval_length", 0.12);
            out["n_max"] = get_int(in, path, "n_max", 30);
            break;
        case ExampleId::KSMinimal:
            reject_unknown(in, path, {"alpha", "j_max"});
            out["alpha"] = get_num(in, path, "alpha", kGoldenAlpha);
            out["j_max"] = get_int(in, path, "j_max", 12);
            break;
        case ExampleId::RotationSmooth:
            reject_unknown(in, path, {"alpha", "amplitude"});
            out["alpha"] = get_num(in, path, "alpha", kGoldenAlpha);
            out["amplitude"] = get_num(in, path, "amplitude", 0.3);
            break;
    }
    return out;
}

json norm_pairs(const json& obj, const std::string& path, bool field_pairs, bool seed_given) {
    require_object(obj, path);
    reject_unknown(obj, path, {"explicit", "random"});
    json out;
    if (obj.contains("explicit")) {
        if (obj.contains("random")) throw ConfigError(path + ": give either explicit or random");
        if (!obj["explicit"].is_array() || obj["explicit"].empty())
            throw ConfigError(path + ".explicit: expected a nonempty array of pairs");
        json arr = json::array();
        std::size_t i = 0;
        for (const auto& e : obj["explicit"]) {
            const std::string p = path + ".explicit[" + std::to_string(i++) + "]";
            if (!e.is_array() || e.size() != 2) throw ConfigError(p + ": expected a 2-element pair");
            if (field_pairs)
                arr.push_back(json::array({norm_point(e[0], p + "[0]"), norm_point(e[1], p + "[1]")}));
            else
                arr.push_back(json::array(
                    {norm_pair_entry(e[0], p + "[0]"), norm_pair_entry(e[1], p + "[1]")}));
        }
        out["explicit"] = arr;
        return out;
    }
    if (!obj.contains("random")) throw ConfigError(path + ": needs explicit or random");
    if (!seed_given) throw ConfigError("seed: required when parameters.pairs.random is used");
    const json& r = obj["random"];
    require_object(r, path + ".random");
    reject_unknown(r, path + ".random", {"count", "min_gap", "max_gap"});
    json rr;
    rr["count"] = get_int(r, path + ".random", "count", 50);
    rr["min_gap"] = get_num(r, path + ".random", "min_gap", 0.0);
    rr["max_gap"] = get_num(r, path + ".random", "max_gap", 0.1);
    out["random"] = rr;
    return out;
}

json norm_parameters(Operation op, const json& in, bool field_example, bool seed_given) {
    const std::string path = "parameters";
    require_object(in, path);
    json out = json::object();
    switch (op) {
        case Operation::simulate:
            reject_unknown(in, path, {"start", "horizon", "dt"});
            if (!in.contains("start")) throw ConfigError(path + ".start: missing required parameter");
            out["start"] = norm_point(in["start"], path + ".start");
            out["horizon"] = get_num(in, path, "horizon");
            out["dt"] = get_num(in, path, "dt", 1e-3);
            break;
        case Operation::separation_sweep:
            reject_unknown(in, path, {"pairs", "delta", "rho", "horizon", "N", "dt", "mode"});
            if (!in.contains("pairs")) throw ConfigError(path + ".pairs: missing required parameter");
            out["pairs"] = norm_pairs(in["pairs"], path + ".pairs", field_example, seed_given);
            if (field_example) {
                if (in.contains("rho") || in.contains("N"))
                    throw ConfigError(path + ": planar-field sweeps use delta/horizon/dt");
                if (in.contains("delta")) out["delta"] = get_num(in, path, "delta");
                out["horizon"] = get_num(in, path, "horizon", 100.0);
                out["dt"] = get_num(in, path, "dt", 1e-3);
            } else {
                if (in.contains("delta") || in.contains("horizon") || in.contains("dt"))
                    throw ConfigError(path + ": suspension sweeps use rho/N");
                if (in.contains("rho")) out["rho"] = get_num(in, path, "rho");
                out["N"] = get_int(in, path, "N", 1000);
            }
            out["mode"] = norm_mode(in, path);
            break;
        case Operation::suspension_check: {
            reject_unknown(in, path, {"pair", "rho", "N", "mode"});
            if (in.contains("pair")) {
                const json& p = in["pair"];
                if (!p.is_array() || p.size() != 2)
                    throw ConfigError(path + ".pair: expected a 2-element pair");
                out["pair"] = json::array({norm_pair_entry(p[0], path + ".pair[0]"),
                                           norm_pair_entry(p[1], path + ".pair[1]")});
            }
            if (in.contains("rho")) out["rho"] = get_num(in, path, "rho");
            out["N"] = get_int(in, path, "N", 1000);
            out["mode"] = norm_mode(in, path);
            break;
        }
        case Operation::series: {
            reject_unknown(in, path, {"pair", "N", "threshold"});
            if (in.contains("pair")) {
                const json& p = in["pair"];
                if (!p.is_array() || p.size() != 2)
                    throw ConfigError(path + ".pair: expected a 2-element pair");
                out["pair"] = json::array({norm_pair_entry(p[0], path + ".pair[0]"),
                                           norm_pair_entry(p[1], path + ".pair[1]")});
            }
            out["N"] = get_int(in, path, "N", 100);
            out["threshold"] = get_num(in, path, "threshold", 1000.0);
            break;
        }
        case Operation::frechet:
            reject_unknown(in, path, {"start_a", "start_b", "horizon_a", "horizon_b", "dt"});
            if (!in.contains("start_a") || !in.contains("start_b"))
                throw ConfigError(path + ": frechet needs start_a and start_b");
            out["start_a"] = norm_point(in["start_a"], path + ".start_a");
            out["start_b"] = norm_point(in["start_b"], path + ".start_b");
            out["horizon_a"] = get_num(in, path, "horizon_a");
            out["horizon_b"] = get_num(in, path, "horizon_b", out["horizon_a"].get<double>());
            out["dt"] = get_num(in, path, "dt", 1e-3);
            break;
        case Operation::denjoy_koksma:
            reject_unknown(in, path, {"n_max", "grid"});
            out["n_max"] = get_int(in, path, "n_max", 10);
            out["grid"] = get_int(in, path, "grid", 4096);
            break;
        case Operation::annulus_period:
            reject_unknown(in, path, {"profile", "r_in", "r_out", "radii", "quad_n", "direct", "direct_dt"});
            out["profile"] = norm_profile(in.contains("profile") ? in["profile"]
                                                                 : json{{"name", "linear"}},
                                          path + ".profile");
            out["r_in"] = get_num(in, path, "r_in", 1.0);
            out["r_out"] = get_num(in, path, "r_out", 2.0);
            out["radii"] = get_int(in, path, "radii", 32);
            out["quad_n"] = get_int(in, path, "quad_n", 512);
            out["direct"] = get_bool(in, path, "direct", false);
            out["direct_dt"] = get_num(in, path, "direct_dt", 1e-4);
            break;
        case Operation::green_check:
            reject_unknown(in, path, {"profile", "r_in", "r_out", "r1", "r2", "quad_n"});
            out["profile"] = norm_profile(in.contains("profile") ? in["profile"]
                                                                 : json{{"name", "linear"}},
                                          path + ".profile");
            out["r_in"] = get_num(in, path, "r_in", 1.0);
            out["r_out"] = get_num(in, path, "r_out", 2.0);
            out["r1"] = get_num(in, path, "r1", out["r_in"].get<double>());
            out["r2"] = get_num(in, path, "r2", out["r_out"].get<double>());
            out["quad_n"] = get_int(in, path, "quad_n", 512);
            break;
        case Operation::robust_criterion:
            reject_unknown(in, path, {"profile", "r_in", "r_out", "grid_n"});
            out["profile"] = norm_profile(in.contains("profile") ? in["profile"]
                                                                 : json{{"name", "linear"}},
                                          path + ".profile");
            out["r_in"] = get_num(in, path, "r_in", 1.0);
            out["r_out"] = get_num(in, path, "r_out", 2.0);
            out["grid_n"] = get_int(in, path, "grid_n", 64);
            break;
    }
    return out;
}

bool example_is_field(ExampleId id) {
    return id == ExampleId::PeriodicBand || id == ExampleId::RigidBand ||
           id == ExampleId::TorusFakeSaddle;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    require_object(root, "config");
    reject_unknown(root, "config",
                   {"example", "example_params", "flow", "operation", "parameters", "seed", "output"});

    ExperimentConfig cfg;
    cfg.operation = operation_from_string(get_str(root, "config", "operation"));
    const bool annulus_op = cfg.operation == Operation::annulus_period ||
                            cfg.operation == Operation::green_check ||
                            cfg.operation == Operation::robust_criterion;

    if (root.contains("example") && root.contains("flow"))
        throw ConfigError("config: give either example or flow, not both");
    if (root.contains("example")) {
        cfg.example = example_id_from_string(get_str(root, "config", "example"));
        cfg.example_params = norm_example_params(
            *cfg.example, root.contains("example_params") ? root["example_params"] : json::object());
    } else if (root.contains("flow")) {
        const json& f = root["flow"];
        require_object(f, "flow");
        reject_unknown(f, "flow", {"base", "map", "time"});
        if (!f.contains("base") || !f.contains("map") || !f.contains("time"))
            throw ConfigError("flow: needs base, map and time");
        cfg.inline_flow["base"] = norm_base(f["base"], "flow.base");
        cfg.inline_flow["map"] = norm_map(f["map"], "flow.map");
        cfg.inline_flow["time"] = norm_time(f["time"], "flow.time");
    } else if (!annulus_op) {
        // the annulus operations build their field from parameters.profile
        throw ConfigError("config: needs an example id or an inline flow");
    }

    cfg.seed_given = root.contains("seed");
    if (cfg.seed_given) cfg.seed = get_int(root, "config", "seed");

    const bool is_field = cfg.example && example_is_field(*cfg.example);
    const bool needs_field = cfg.operation == Operation::simulate || cfg.operation == Operation::frechet;
    const bool needs_susp = cfg.operation == Operation::suspension_check ||
                            cfg.operation == Operation::series ||
                            cfg.operation == Operation::denjoy_koksma;
    if (needs_field && !is_field)
        throw ConfigError("config: " + to_string(cfg.operation) + " needs a planar field example");
    if (needs_susp && is_field)
        throw ConfigError("config: " + to_string(cfg.operation) + " needs a suspension example");

    cfg.parameters = norm_parameters(cfg.operation,
                                     root.contains("parameters") ? root["parameters"] : json::object(),
                                     is_field, cfg.seed_given);

    if (root.contains("output")) {
        const json& o = root["output"];
        require_object(o, "output");
        reject_unknown(o, "output", {"path", "format"});
        OutputSpec spec;
        spec.path = get_str(o, "output", "path");
        spec.format = get_str(o, "output", "format", std::string("csv"));
        if (spec.format != "csv" && spec.format != "json")
            throw ConfigError("output.format: expected csv or json");
        cfg.output = spec;
    }
    return cfg;
}

json emit_config(const ExperimentConfig& cfg) {
    json root;
    if (cfg.example) {
        for (const auto& [id, name] : example_ids())
            if (id == *cfg.example) root["example"] = name;
        root["example_params"] = cfg.example_params;
    } else if (cfg.inline_flow.is_object()) {
        root["flow"] = cfg.inline_flow;
    }
    root["operation"] = to_string(cfg.operation);
    root["parameters"] = cfg.parameters;
    if (cfg.seed_given) root["seed"] = cfg.seed;
    if (cfg.output) {
        root["output"] = {{"path", cfg.output->path}, {"format", cfg.output->format}};
    }
    return root;
}

namespace {

BaseSpace base_from_json(const json& b) {
    const std::string kind = b["kind"].get<std::string>();
    if (kind == "interval") return Interval{b["lo"].get<double>(), b["hi"].get<double>()};
    if (kind == "circle") return UnitCircle{};
    std::vector<double> pts;
    for (const auto& p : b["points"]) pts.push_back(p.get<double>());
    return FiniteSet{std::move(pts)};
}

ReturnTime time_from_json(const json& t) {
    const std::string kind = t["kind"].get<std::string>();
    if (kind == "constant") return ConstantTime{t["c"].get<double>()};
    if (kind == "reciprocal") return ReciprocalTime{};
    if (kind == "quadratic") return QuadraticTime{};
    if (kind == "sinusoidal") return SinusoidalTime{t["amplitude"].get<double>()};
    PiecewiseLinearTime pl;
    for (const auto& p : t["pos"]) pl.pos.push_back(p.get<double>());
    for (const auto& v : t["val"]) pl.val.push_back(v.get<double>());
    pl.fill = t["fill"].get<double>();
    return pl;
}

BaseMap map_from_json(const json& m) {
    const std::string kind = m["kind"].get<std::string>();
    if (kind == "identity") return IdentityMap{};
    if (kind == "halving") return HalvingMap{};
    if (kind == "negation") return NegationMap{};
    return RotationMap{m["alpha"].get<double>()};
}

} // namespace

BuiltExample build_example(const ExperimentConfig& cfg) {
    BuiltExample out;
    if (!cfg.example) {
        if (cfg.inline_flow.is_null()) throw ConfigError("config: nothing to build");
        SuspensionFlow flow{base_from_json(cfg.inline_flow["base"]),
                            map_from_json(cfg.inline_flow["map"]),
                            time_from_json(cfg.inline_flow["time"])};
        validate_suspension(flow);
        out.flow = std::move(flow);
        return out;
    }
    const json& p = cfg.example_params;
    switch (*cfg.example) {
        case ExampleId::PeriodicBand: out.field = periodic_band(false); break;
        case ExampleId::RigidBand: out.field = periodic_band(true); break;
        case ExampleId::TorusFakeSaddle:
            out.field = torus_fake_saddle(p["alpha"].get<double>(),
                                          {p["p"][0].get<double>(), p["p"][1].get<double>()});
            break;
        case ExampleId::MoebiusSuspension: out.flow = moebius_suspension(); break;
        case ExampleId::DiscReciprocal:
            out.flow = disc_reciprocal_suspension(p["x_min"].get<double>());
            break;
        case ExampleId::BandKnots:
            out.flow = band_knots_suspension(static_cast<int>(p["n_max"].get<long long>()));
            break;
        case ExampleId::IdentitySuspension:
            out.flow = identity_suspension(base_from_json(p["base"]), time_from_json(p["time"]));
            break;
        case ExampleId::DenjoySuspension:
            out.flow = denjoy_suspension(p["alpha"].get<double>(),
                                         p["interval_length"].get<double>(),
                                         static_cast<int>(p["n_max"].get<long long>()))
                           .flow;
            break;
        case ExampleId::KSMinimal: {
            out.ks = ks_minimal_suspension(p["alpha"].get<double>(),
                                           static_cast<int>(p["j_max"].get<long long>()));
            out.flow = out.ks->flow;
            break;
        }
        case ExampleId::RotationSmooth:
            out.flow = rotation_smooth_suspension(p["alpha"].get<double>(),
                                                  p["amplitude"].get<double>());
            break;
    }
    return out;
}

} // namespace explab
