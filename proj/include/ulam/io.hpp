#pragma once

// Config files and JSON reports shared by the CLI and the suites.

#include "ulam/boundedness.hpp"
#include "ulam/core.hpp"
#include "ulam/stability.hpp"
#include "ulam/witness.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace ulam {

using Json = nlohmann::ordered_json;

/// {"h": 1, "coefficients": [[re, im], ...], "epsilon": 1, "horizon_periods": 50,
///  "classification_tol": 1e-9, "seed": 0}
struct ProblemConfig {
    double h = 1.0;
    std::vector<Complex> coefficients;
    double epsilon = 1.0;
    std::size_t horizon_periods = 50;
    double classification_tol = kDefaultClassificationTol;
    std::uint64_t seed = 0;

    CoefficientCycle cycle() const { return CoefficientCycle::validate(h, coefficients); }
};

/// Throws Error(InvalidArgument) on unknown keys, wrong types or a
/// non-finite/non-positive epsilon, and the validate_cycle errors otherwise.
ProblemConfig parse_config(const Json& doc);
ProblemConfig parse_config_text(const std::string& text);
ProblemConfig load_config(const std::string& path);

Json to_json(const StabilityReport& report, const CoefficientCycle& cycle);
Json to_json(const WitnessReport& report);
Json to_json(const BoundednessCertificate& certificate);
Json to_json(const BoundednessReport& report);

}  // namespace ulam
