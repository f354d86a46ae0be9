#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glin/glin.hpp"

namespace glin::tool {

/// Everything a subcommand needs, parsed and validated from one config file.
/// Unknown keys anywhere in the file are rejected; numeric fields are checked
/// against the preconditions of the operations they feed.
struct LoadedRun {
    ProblemDefinition problem;
    StateVector f;
    StateVector u0;
    IterationOptions iteration;
    SolveOptions solve;

    bool has_certificate = false;
    double certificate_radius = 0.0;
    CertifyOptions certify;

    std::vector<std::string> compare_methods;

    std::string sweep_parameter;
    std::vector<double> sweep_values;

    std::string family;
    double rhs_amplitude = 1.0;
};

/// Parse and validate a config file. `seed_override` (from --seed) replaces
/// the certificate seed when present. Throws ConfigError naming the
/// offending key.
LoadedRun load_config(const std::string& path, std::optional<std::uint64_t> seed_override);

/// Re-assemble the right-hand side with a different amplitude (sweep rows).
StateVector scaled_rhs(const LoadedRun& run, double amplitude);

}  // namespace glin::tool
