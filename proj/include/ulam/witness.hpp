#pragma once

// Extremal approximate solutions.
//
// On the boundary rho = 1, φ(t) = eps l t e_p(t) has residual at most eps yet
// drifts away from every exact solution c e_p. For rho > 1, forcing aligned
// with the phase of e_p makes the tracking error reach K_n eps in the limit,
// so K_n cannot be improved.

#include "ulam/core.hpp"
#include "ulam/simulator.hpp"
#include "ulam/stability.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ulam {

enum class WitnessMode { Instability, Sharpness };

const char* to_string(WitnessMode mode);

/// Minimum over the probe constants of sup_{j <= steps} |φ(jh) - c e_p(jh)|.
struct GrowthRow {
    std::size_t steps = 0;
    double min_sup = 0.0;
    double lower_bound = 0.0;  ///< eps l h steps min_k |e_p(kh)| / 2
};

struct WitnessReport {
    WitnessMode mode = WitnessMode::Sharpness;
    Trajectory phi;
    GridFunction q;
    double epsilon = 0.0;
    double achieved_sup = 0.0;
    std::optional<double> target;  ///< K_n eps for sharpness witnesses
    double remainder = 0.0;        ///< K_n eps rho^-periods for sharpness witnesses
    std::vector<double> residue_profile;
    std::size_t periods = 0;
    double max_residual = 0.0;

    // Sharpness only.
    Complex x0{};

    // Instability only.
    double ell = 0.0;
    std::vector<Complex> probes;
    std::vector<GrowthRow> growth;
};

/// Boundary witness φ(jh) = eps l jh e_p(jh), l = 1 / max_{1<=k<=n} |e_p(kh)|.
/// residue_profile[k] is the residual magnitude eps l |e_p((k+1)h)| at t/h ≡ k.
WitnessReport instability_witness(const CoefficientCycle& cycle, double epsilon,
                                  std::size_t steps,
                                  double classification_tol = kDefaultClassificationTol);

/// Phase-aligned forcing on periods n + argmax steps, φ(0) = 0.
WitnessReport sharpness_witness(const CoefficientCycle& cycle, double epsilon,
                                std::size_t periods,
                                double classification_tol = kDefaultClassificationTol);

/// h eps rho S_k / (rho - 1) for each residue k.
std::vector<double> tracking_error_profile(const CoefficientCycle& cycle, double epsilon,
                                           double classification_tol = kDefaultClassificationTol);

struct BruteForceOptions {
    std::size_t phase_samples = 64;
    std::size_t restarts = 4;
    std::uint64_t seed = 0;
    std::size_t max_sweeps = 50;
};

/// Search over forcings with |q| = eps on the sharpness horizon for the
/// largest sup_t |φ(t) - x_0 e_p(t)|. Starts from constant-phase forcings on
/// a grid of phase_samples angles plus random grid-phase forcings, then does
/// coordinate ascent one sample phase at a time for each window start in the
/// first period. Never uses the aligned closed form.
double brute_force_sup(const CoefficientCycle& cycle, double epsilon, std::size_t periods,
                       const BruteForceOptions& options = {},
                       double classification_tol = kDefaultClassificationTol);

inline double brute_force_sup(const CoefficientCycle& cycle, double epsilon, std::size_t periods,
                              std::size_t phase_samples, std::uint64_t seed) {
    BruteForceOptions options;
    options.phase_samples = phase_samples;
    options.seed = seed;
    return brute_force_sup(cycle, epsilon, periods, options);
}

}  // namespace ulam
