#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "explab/run.hpp"

namespace {

int list_examples() {
    for (const auto& [id, name] : explab::example_ids())
        std::cout << name << "\n    " << explab::example_description(id) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"explab: separation, period and robustness experiments for planar flows "
                 "and suspension flows"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list-examples", "print the example catalog");

    std::string config_path, out_path;
    long long seed = 0;
    bool seed_set = false;
    std::vector<CLI::App*> ops;
    for (const char* name : {"simulate", "separation-sweep", "suspension-check", "series",
                             "frechet", "denjoy-koksma", "annulus-period", "green-check",
                             "robust-criterion"}) {
        CLI::App* sub = app.add_subcommand(name, "run the " + std::string(name) + " operation");
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", out_path, "override the report path");
        sub->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
            seed_set = true;
        });
        ops.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) return list_examples();

    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot read config file: " << config_path << "\n";
            return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        explab::ExperimentConfig cfg = explab::parse_config(buf.str());

        const std::string requested = app.get_subcommands().front()->get_name();
        if (requested != explab::to_string(cfg.operation)) {
            std::cerr << "error: config operation '" << explab::to_string(cfg.operation)
                      << "' does not match subcommand '" << requested << "'\n";
            return 2;
        }
        explab::run(cfg, out_path,
                    seed_set ? std::optional<long long>(seed) : std::nullopt);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return explab::exit_code_for(e);
    }
}
