#include "ulam/boundedness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace ulam {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be positive and finite");
}

struct TwoCycleData {
    double K0;
    double rho;
    double maxfac;
};

TwoCycleData contracting_two_cycle(const CoefficientCycle& cycle, double tol) {
    if (cycle.period() != 2)
        throw Error(ErrorCode::UnsupportedPeriod,
                    "boundedness certificates are for period-two cycles, got n = " +
                        std::to_string(cycle.period()));
    const double a0 = std::abs(cycle.factor(0));
    const double a1 = std::abs(cycle.factor(1));
    const double rho = a0 * a1;
    if (classify(rho, tol).tag != StabilityTag::StableContracting)
        throw Error(ErrorCode::NotContracting,
                    "boundedness needs |1+h p0||1+h p1| < 1, got " + std::to_string(rho));
    return {two_cycle_constant(cycle.h(), cycle[0], cycle[1], tol), rho, std::max(1.0, a0)};
}

}  // namespace

double ultimate_bound(const CoefficientCycle& cycle, double L, double delta,
                      double classification_tol) {
    require_positive(L, "L");
    require_positive(delta, "delta");
    return L * contracting_two_cycle(cycle, classification_tol).K0 + delta;
}

BoundednessCertificate certify(const CoefficientCycle& cycle, double L, double delta,
                               double alpha, double classification_tol) {
    require_positive(L, "L");
    require_positive(delta, "delta");
    require_positive(alpha, "alpha");
    const TwoCycleData d = contracting_two_cycle(cycle, classification_tol);
    BoundednessCertificate c{L, delta, d.K0, L * d.K0 + delta, alpha, 0.0, d.maxfac};
    const double reach = (L * d.K0 + alpha) * d.maxfac;
    if (reach > delta)
        c.T_alpha = cycle.h() * (2.0 * std::log(delta / reach) / std::log(d.rho) + 1.0);
    return c;
}

double settle_time(const CoefficientCycle& cycle, double L, double delta, double alpha,
                   double classification_tol) {
    return certify(cycle, L, delta, alpha, classification_tol).T_alpha;
}

BoundednessReport verify_boundedness(const CoefficientCycle& cycle, const Forcing& f, double L,
                                     double delta, const std::vector<double>& alphas,
                                     std::size_t trials_per_alpha, std::uint64_t seed,
                                     double classification_tol) {
    if (!f) throw Error(ErrorCode::CallbackFailure, "perturbation callback is empty");
    if (trials_per_alpha == 0) throw Error(ErrorCode::InvalidArgument, "need at least one trial");
    const double h = cycle.h();
    const std::size_t n = cycle.period();

    BoundednessReport report;
    report.L = L;
    report.delta = delta;
    report.B = ultimate_bound(cycle, L, delta, classification_tol);
    report.K0 = (report.B - delta) / L;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Wraps f and checks the |f| <= L hypothesis at every evaluation.
    std::size_t bad_step = 0;
    bool violated = false;
    const Forcing checked = [&](GridTime t, Complex phi) {
        const Complex v = f(t, phi);
        if (!violated && std::abs(v) > L * (1.0 + 1e-12)) {
            violated = true;
            bad_step = static_cast<std::size_t>(t.step);
        }
        return v;
    };

    for (double alpha : alphas) {
        const BoundednessCertificate cert = certify(cycle, L, delta, alpha, classification_tol);
        const double settle_steps = std::ceil(cert.T_alpha / h);
        const std::size_t horizon = static_cast<std::size_t>(
            std::max(settle_steps + 4.0 * static_cast<double>(n), 100.0 * static_cast<double>(n)));
        const std::size_t first = static_cast<std::size_t>(std::max(0.0, settle_steps));

        BoundednessRow row{alpha, cert.T_alpha, cert.B, 0.0, 0.0, trials_per_alpha, horizon};
        for (std::size_t i = 0; i < trials_per_alpha; ++i) {
            // Radial strata cover [0, alpha); the open bound is kept strictly.
            const double u = (static_cast<double>(i) + unit(rng)) / static_cast<double>(trials_per_alpha);
            const double radius = std::min(alpha * u, std::nextafter(alpha, 0.0));
            const double theta = 2.0 * std::numbers::pi * unit(rng);
            const Complex phi0 = std::polar(radius, theta);

            const Trajectory phi = solve_perturbed(cycle, phi0, checked, horizon);
            if (violated)
                throw Error(ErrorCode::PerturbationBoundViolated,
                            "|f| exceeded L at step " + std::to_string(bad_step) + " (alpha " +
                                std::to_string(alpha) + ", trial " + std::to_string(i) + ")",
                            bad_step);
            for (std::size_t j = first; j < phi.size(); ++j) {
                // settle_steps rounds T up, so every j >= first has jh >= T(alpha).
                const double mag = std::abs(phi[j]);
                if (mag >= cert.B)
                    throw Error(ErrorCode::CertificateViolated,
                                "|phi| = " + std::to_string(mag) + " >= B = " +
                                    std::to_string(cert.B) + " at step " + std::to_string(j) +
                                    " (alpha " + std::to_string(alpha) + ", trial " +
                                    std::to_string(i) + ")",
                                j);
                row.max_observed = std::max(row.max_observed, mag);
            }
        }
        row.margin = cert.B - row.max_observed;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace ulam
