#pragma once

// Ulam stability classification and stability constants for periodic cycles.

#include "ulam/core.hpp"

#include <optional>
#include <vector>

namespace ulam {

/// Width of the band |rho - 1| <= tol treated as the non-stable boundary.
inline constexpr double kDefaultClassificationTol = 1e-9;

enum class StabilityTag { NotUlamStable, StableExpanding, StableContracting };

const char* to_string(StabilityTag tag);

struct StabilityClass {
    StabilityTag tag = StabilityTag::NotUlamStable;
    double rho = 1.0;
    double classification_tol = kDefaultClassificationTol;
};

StabilityClass classify(double rho, double classification_tol = kDefaultClassificationTol);
StabilityClass classify(const CoefficientCycle& cycle,
                        double classification_tol = kDefaultClassificationTol);

struct StabilityReport {
    StabilityClass stability;
    double rho = 1.0;
    std::vector<double> sums;       ///< S_0 ... S_{n-1}
    std::optional<double> K;        ///< absent on the boundary rho = 1
    std::size_t argmax_residue = 0; ///< first k with S_k = max S
    bool is_minimum_constant = false;
    bool minimality_warning = false;    ///< declared period is not minimal
    bool near_singular_warning = false; ///< some |1 + h p_k| is tiny
};

/// S_k = sum_{j=1}^{n} 1 / (|1+h p_k| |1+h p_{k+1}| ... |1+h p_{k+j-1}|), indices mod n.
std::vector<double> partial_sums(const CoefficientCycle& cycle);

/// K = h rho max_k S_k / |1 - rho|, the best constant when rho > 1.
StabilityReport ulam_constant(const CoefficientCycle& cycle,
                              double classification_tol = kDefaultClassificationTol);

/// Closed form for period two:
/// h max{1 + |1+h p0|, 1 + |1+h p1|} / |1 - |1+h p0||1+h p1||.
double two_cycle_constant(double h, Complex p0, Complex p1,
                          double classification_tol = kDefaultClassificationTol);

/// K_n = h rho max S_k / (rho - 1). Throws NotExpanding unless rho > 1 + tol.
double expanding_minimum_constant(const CoefficientCycle& cycle,
                                  double classification_tol = kDefaultClassificationTol);

/// eps h rho S_0 / (1 - rho): admissible |phi(0) - x(0)| in the contracting case.
double initial_radius(const CoefficientCycle& cycle, double epsilon,
                      double classification_tol = kDefaultClassificationTol);

}  // namespace ulam
