#pragma once

#include <optional>
#include <string>

#include "explab/config.hpp"

namespace explab {

struct RunResult {
    std::string summary;
    std::string output_path;
};

/// Execute one experiment: build the example, run the operation, write the
/// report (CSV or JSON) and print a one-line summary. Deterministic given
/// (config, seed). Throws ConfigError/ParameterError for bad setups and the
/// numerical-domain errors (DomainError, SingularityError, EscapeError) from
/// the underlying operations.
RunResult run(const ExperimentConfig& cfg, const std::string& out_override = "",
              std::optional<long long> seed_override = {});

/// Process exit code for an error thrown by run(): 2 for config/parameter
/// problems, 3 for numerical-domain errors.
int exit_code_for(const std::exception& e);

} // namespace explab
