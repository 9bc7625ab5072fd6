#pragma once

// Uniform-ultimate boundedness of Δ_h φ(t) - p(t) φ(t) = f(t, φ(t)) with a
// contracting two-cycle p and |f| <= L: every solution with |φ(0)| < alpha
// satisfies |φ(t)| < L K_0 + delta for t >= T(alpha).

#include "ulam/core.hpp"
#include "ulam/simulator.hpp"
#include "ulam/stability.hpp"

#include <cstdint>
#include <vector>

namespace ulam {

struct BoundednessCertificate {
    double L = 0.0;
    double delta = 0.0;
    double K0 = 0.0;
    double B = 0.0;        ///< L K0 + delta
    double alpha = 0.0;
    double T_alpha = 0.0;  ///< time, not steps
    double maxfac = 1.0;   ///< max{1, |1 + h p_0|}
};

/// B = L K_0 + delta. Throws UnsupportedPeriod unless n = 2, NotContracting unless rho < 1.
double ultimate_bound(const CoefficientCycle& cycle, double L, double delta,
                      double classification_tol = kDefaultClassificationTol);

/// T(alpha) = h (2 log_rho(delta / ((L K_0 + alpha) maxfac)) + 1), or 0 when
/// (L K_0 + alpha) maxfac <= delta.
double settle_time(const CoefficientCycle& cycle, double L, double delta, double alpha,
                   double classification_tol = kDefaultClassificationTol);

BoundednessCertificate certify(const CoefficientCycle& cycle, double L, double delta,
                               double alpha,
                               double classification_tol = kDefaultClassificationTol);

struct BoundednessRow {
    double alpha = 0.0;
    double T_alpha = 0.0;
    double B = 0.0;
    double max_observed = 0.0;  ///< max |φ(t)| over t >= T(alpha), all trials
    double margin = 0.0;        ///< B - max_observed
    std::size_t trials = 0;
    std::size_t horizon_steps = 0;
};

struct BoundednessReport {
    double L = 0.0;
    double delta = 0.0;
    double K0 = 0.0;
    double B = 0.0;
    std::vector<BoundednessRow> rows;
};

/// Simulates trials_per_alpha seeded initial values with |φ(0)| < alpha for
/// each alpha past max(T(alpha) + 4 n h, 100 n h). Throws
/// PerturbationBoundViolated if f ever exceeds L along a trajectory and
/// CertificateViolated if some |φ(t)| >= B with t >= T(alpha).
BoundednessReport verify_boundedness(const CoefficientCycle& cycle, const Forcing& f, double L,
                                     double delta, const std::vector<double>& alphas,
                                     std::size_t trials_per_alpha, std::uint64_t seed,
                                     double classification_tol = kDefaultClassificationTol);

}  // namespace ulam
