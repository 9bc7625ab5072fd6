#pragma once

// Property suites run by `ulam verify`.

#include "ulam/io.hpp"

#include <string>
#include <vector>

namespace ulam {

struct SuiteCase {
    std::string label;
    bool passed = true;
    double observed = 0.0;
    double bound = 0.0;
    double margin = 0.0;  ///< positive when passing
    std::string note;
};

struct SuiteResult {
    std::string suite;
    std::vector<SuiteCase> cases;

    bool passed() const;
    Json to_json() const;
};

/// Sharpness sandwich on the configured cycle (when expanding) and on
/// `trials` seeded random expanding cycles with n <= 5 and rho in (1.05, 4).
SuiteResult sharpness_suite(const ProblemConfig& config, std::size_t trials);

/// Strict contracting tube over horizon_periods periods for `trials` random
/// forcings, each with x(0) drawn inside initial_radius. Needs rho < 1.
SuiteResult contracting_suite(const ProblemConfig& config, std::size_t trials);

/// A second solution offset by K_n eps 1e-3 in `trials` random directions
/// must leave the tube at the predicted period count (within one). Needs rho > 1.
SuiteResult uniqueness_suite(const ProblemConfig& config, std::size_t trials);

/// Predicted number of periods after which |c - x_0| |e_p(t)| > 2 K_n eps
/// holds on the whole period: ceil(log_rho(2 K_n eps / (|c - x_0| min_k |e_p(kh)|))) + 1.
std::size_t predicted_separation_periods(const CoefficientCycle& cycle, double k_n_eps,
                                         double offset);

struct SeparationObservation {
    std::size_t whole_period = 0;   ///< first period with |x1 - x2| > 2 K_n eps at every step
    std::size_t first_exit_step = 0;  ///< first step with |φ - x2| > K_n eps
    bool exited_in_whole_period = false;  ///< |φ - x2| > K_n eps on all of that period
    double max_tracked = 0.0;       ///< sup |φ - x1|
};

/// Simulates φ (forcing q, φ(0) = phi0), x1 = x0 e_p and x2 = c e_p on
/// `periods` periods and records where x2 separates.
SeparationObservation observe_separation(const CoefficientCycle& cycle, Complex phi0,
                                         const GridFunction& q, Complex x0, Complex c,
                                         double k_n_eps, std::size_t periods);

}  // namespace ulam
