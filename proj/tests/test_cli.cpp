#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "explab/run.hpp"

using namespace explab;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("parse_config: minimal suspension check") {
    auto cfg = parse_config(R"({"example":"MoebiusSuspension","operation":"suspension-check",
                                "parameters":{"rho":0.5,"N":1000},"seed":1})");
    CHECK(cfg.example == ExampleId::MoebiusSuspension);
    CHECK(cfg.operation == Operation::suspension_check);
    CHECK(cfg.parameters["rho"] == 0.5);
    CHECK(cfg.parameters["N"] == 1000);
    CHECK(cfg.parameters["mode"] == "forward"); // default filled
    CHECK(cfg.seed == 1);
}

TEST_CASE("parse_config: unknown operation and unknown keys") {
    CHECK_THROWS_WITH_AS(
        static_cast<void>(parse_config(R"({"example":"MoebiusSuspension","operation":"fly"})")),
        doctest::Contains("operation"), ConfigError);
    CHECK_THROWS_WITH_AS(
        static_cast<void>(parse_config(
            R"({"example":"MoebiusSuspension","operation":"suspension-check",
                "parameters":{"rho":0.5,"NN":7}})")),
        doctest::Contains("parameters.NN"), ConfigError);
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_config(R"({"examplee":"x"})")),
                         doctest::Contains("config.examplee"), ConfigError);
    CHECK_THROWS_AS(static_cast<void>(parse_config("not json at all")), ConfigError);
}

TEST_CASE("parse_config: simulate fills dt default") {
    auto cfg = parse_config(R"({"example":"PeriodicBand","operation":"simulate",
                                "parameters":{"start":[1.0,0.0],"horizon":1.0}})");
    CHECK(cfg.parameters["dt"] == 1e-3);
}

TEST_CASE("parse_config: randomized pairs require a seed") {
    CHECK_THROWS_WITH_AS(
        static_cast<void>(parse_config(
            R"({"example":"MoebiusSuspension","operation":"separation-sweep",
                "parameters":{"pairs":{"random":{"count":5}}}})")),
        doctest::Contains("seed"), ConfigError);
}

TEST_CASE("parse_config: sweep thresholds must match the example kind") {
    CHECK_THROWS_WITH_AS(
        static_cast<void>(parse_config(
            R"({"example":"PeriodicBand","operation":"separation-sweep",
                "parameters":{"pairs":{"explicit":[[[1,0],[1.1,0]]]},"rho":0.5}})")),
        doctest::Contains("delta/horizon/dt"), ConfigError);
    CHECK_THROWS_WITH_AS(
        static_cast<void>(parse_config(
            R"({"example":"MoebiusSuspension","operation":"separation-sweep",
                "parameters":{"pairs":{"explicit":[[0.1,-0.1]]},"delta":0.5}})")),
        doctest::Contains("rho/N"), ConfigError);
}

TEST_CASE("parse_config: operation/example compatibility") {
    CHECK_THROWS_AS(static_cast<void>(
                        parse_config(R"({"example":"MoebiusSuspension","operation":"simulate",
                                         "parameters":{"start":[0,0],"horizon":1}})")),
                    ConfigError);
    CHECK_THROWS_AS(static_cast<void>(
                        parse_config(R"({"example":"PeriodicBand","operation":"series"})")),
                    ConfigError);
}

TEST_CASE("config round trip: parse(emit(cfg)) == cfg") {
    for (const char* text :
         {R"({"example":"KSMinimal","operation":"suspension-check",
              "parameters":{"pair":["0-","0+"],"rho":0.5,"N":100},"seed":3,
              "output":{"path":"t.json","format":"json"}})",
          R"({"example":"RotationSmooth","operation":"denjoy-koksma",
              "parameters":{"n_max":4,"grid":1024}})",
          R"({"operation":"robust-criterion",
              "parameters":{"profile":{"name":"linear_plus_sin"},"grid_n":32}})",
          R"({"flow":{"base":{"kind":"interval","lo":0.0,"hi":1.0},
                      "map":{"kind":"identity"},
                      "time":{"kind":"piecewise_linear","pos":[0.0,1.0],"val":[1.0,2.0]}},
              "operation":"series","parameters":{"pair":[0.2,0.6],"N":10}})"}) {
        auto cfg = parse_config(text);
        auto again = parse_config(emit_config(cfg).dump());
        CHECK(again == cfg);
    }
}

TEST_CASE("run: KS suspension-check crosses at the harmonic threshold") {
    auto cfg = parse_config(R"({"example":"KSMinimal","example_params":{"j_max":8},
        "operation":"suspension-check",
        "parameters":{"pair":["0-","0+"],"rho":1.4,"N":700},"seed":1,
        "output":{"path":"ks_check.json","format":"json"}})");
    TempFile tmp("ks_check.json");
    auto res = run(cfg);
    const json out = json::parse(slurp(tmp.path));
    CHECK(out["separated"] == true);
    CHECK(out["channel"] == "time-gap");
    // H_2 = 1.5 >= 1.4 first clears the threshold at the second record time n_2 = 2
    CHECK(out["witness_index"] == 2);
}

TEST_CASE("run: green-check writes a small residual") {
    auto cfg = parse_config(R"({"example":"PeriodicBand","operation":"green-check",
        "parameters":{"profile":{"name":"linear"},"quad_n":512},
        "output":{"path":"green.json","format":"json"}})");
    TempFile tmp("green.json");
    run(cfg);
    const json out = json::parse(slurp(tmp.path));
    CHECK(out["residual"].get<double>() < 1e-6);
}

TEST_CASE("run: deterministic byte-identical sweep reruns") {
    auto cfg = parse_config(R"({"example":"BandKnots","operation":"separation-sweep",
        "parameters":{"pairs":{"random":{"count":12,"min_gap":0.1,"max_gap":0.3}},
                      "rho":1.0,"N":2000},
        "seed":42,"output":{"path":"sweep_a.csv","format":"csv"}})");
    TempFile a("sweep_a.csv"), b("sweep_b.csv");
    run(cfg);
    run(cfg, "sweep_b.csv");
    CHECK(slurp(a.path) == slurp(b.path));
    // different seed changes the bytes
    TempFile c("sweep_c.csv");
    run(cfg, "sweep_c.csv", 43);
    CHECK(slurp(a.path) != slurp(c.path));
}

TEST_CASE("run: simulate trajectory CSV has the expected sample count") {
    auto cfg = parse_config(R"({"example":"PeriodicBand","operation":"simulate",
        "parameters":{"start":[1.0,0.0],"horizon":6.283185307179586,"dt":0.01},
        "output":{"path":"simulate_test.csv","format":"csv"}})");
    TempFile tmp("simulate_test.csv");
    run(cfg);
    const std::string text = slurp(tmp.path);
    const auto lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == 630); // header + 629 samples
}

TEST_CASE("run: robust-criterion emits the div-z grid as CSV") {
    auto cfg = parse_config(R"({"example":"PeriodicBand","operation":"robust-criterion",
        "parameters":{"profile":{"name":"linear"},"grid_n":16},
        "output":{"path":"divz_grid.csv","format":"csv"}})");
    TempFile tmp("divz_grid.csv");
    run(cfg);
    const std::string text = slurp(tmp.path);
    CHECK(text.rfind("r,theta,div_z", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 16 * 16);
}

TEST_CASE("run: inline flow drives the series operation") {
    auto cfg = parse_config(R"({"flow":{"base":{"kind":"interval","lo":0.0,"hi":1.0},
                                        "map":{"kind":"halving"},
                                        "time":{"kind":"reciprocal"}},
        "operation":"series","parameters":{"pair":[0.5,0.75],"N":10},
        "output":{"path":"inline_series.csv","format":"csv"}})");
    TempFile tmp("inline_series.csv");
    auto res = run(cfg);
    CHECK(res.summary.find("1364.66") != std::string::npos);
}

TEST_CASE("run: exit code mapping") {
    CHECK(exit_code_for(ConfigError("x")) == 2);
    CHECK(exit_code_for(ParameterError("x")) == 2);
    CHECK(exit_code_for(DomainError("x")) == 3);
    CHECK(exit_code_for(EscapeError("x", 0, 0)) == 3);
    CHECK(exit_code_for(std::runtime_error("x")) == 1);
}
