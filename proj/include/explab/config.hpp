#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "explab/catalog.hpp"

namespace explab {

enum class Operation {
    simulate,
    separation_sweep,
    suspension_check,
    series,
    frechet,
    denjoy_koksma,
    annulus_period,
    green_check,
    robust_criterion,
};

std::string to_string(Operation op);
Operation operation_from_string(const std::string& name);

struct OutputSpec {
    std::string path;
    std::string format; // "csv" or "json"
    bool operator==(const OutputSpec&) const = default;
};

/// A parsed, validated experiment description with all defaults filled.
struct ExperimentConfig {
    std::optional<ExampleId> example;
    nlohmann::json example_params; // normalized
    nlohmann::json inline_flow;    // suspension description, when no example id
    Operation operation = Operation::simulate;
    nlohmann::json parameters; // normalized per-operation parameters
    long long seed = 0;
    bool seed_given = false;
    std::optional<OutputSpec> output;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parse and validate a JSON config. Unknown keys are rejected and missing
/// required parameters reported with path-to-field messages; optional
/// parameters are filled with their documented defaults.
ExperimentConfig parse_config(const std::string& text);

/// Normalized JSON form; parse_config(emit_config(c).dump()) == c.
nlohmann::json emit_config(const ExperimentConfig& cfg);

/// Materialized flow/field for a config (exactly one is set).
struct BuiltExample {
    std::optional<VectorFieldSpec> field;
    std::optional<SuspensionFlow> flow;
    std::optional<KSConstruction> ks; // kept when the example is KSMinimal
};

BuiltExample build_example(const ExperimentConfig& cfg);

} // namespace explab
