#include "ulam/stability.hpp"

#include "ulam/exponential.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ulam {

const char* to_string(StabilityTag tag) {
    switch (tag) {
    case StabilityTag::NotUlamStable: return "NotUlamStable";
    case StabilityTag::StableExpanding: return "StableExpanding";
    case StabilityTag::StableContracting: return "StableContracting";
    }
    return "Unknown";
}

StabilityClass classify(double rho, double classification_tol) {
    if (!(classification_tol >= 0.0) || !std::isfinite(classification_tol))
        throw Error(ErrorCode::InvalidArgument, "classification tolerance must be finite and >= 0");
    StabilityClass c{StabilityTag::NotUlamStable, rho, classification_tol};
    if (rho > 1.0 + classification_tol)
        c.tag = StabilityTag::StableExpanding;
    else if (rho < 1.0 - classification_tol)
        c.tag = StabilityTag::StableContracting;
    return c;
}

StabilityClass classify(const CoefficientCycle& cycle, double classification_tol) {
    return classify(multiplier(cycle).rho, classification_tol);
}

std::vector<double> partial_sums(const CoefficientCycle& cycle) {
    const std::size_t n = cycle.period();
    std::vector<double> log_mag(n);
    for (std::size_t k = 0; k < n; ++k) log_mag[k] = std::log(std::abs(cycle.factor(k)));

    std::vector<double> sums(n);
    std::vector<double> terms(n);
    for (std::size_t k = 0; k < n; ++k) {
        double running = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            running += log_mag[(k + j) % n];
            terms[j] = std::exp(-running);
        }
        std::sort(terms.begin(), terms.end(), std::greater<>());
        double s = 0.0;
        for (double term : terms) s += term;
        sums[k] = s;
    }
    return sums;
}

StabilityReport ulam_constant(const CoefficientCycle& cycle, double classification_tol) {
    const Multiplier m = multiplier(cycle);
    StabilityReport r;
    r.stability = classify(m.rho, classification_tol);
    r.rho = m.rho;
    r.sums = partial_sums(cycle);
    r.argmax_residue = static_cast<std::size_t>(
        std::max_element(r.sums.begin(), r.sums.end()) - r.sums.begin());
    r.minimality_warning = !cycle.is_minimal();
    r.near_singular_warning = cycle.has_near_singular_factor();
    if (r.stability.tag != StabilityTag::NotUlamStable) {
        r.K = cycle.h() * m.rho * r.sums[r.argmax_residue] / std::abs(1.0 - m.rho);
        r.is_minimum_constant = r.stability.tag == StabilityTag::StableExpanding;
    }
    return r;
}

double two_cycle_constant(double h, Complex p0, Complex p1, double classification_tol) {
    const CoefficientCycle checked = CoefficientCycle::validate(h, {p0, p1});
    const double a0 = std::abs(checked.factor(0));
    const double a1 = std::abs(checked.factor(1));
    const double product = a0 * a1;
    if (std::abs(product - 1.0) <= classification_tol)
        throw Error(ErrorCode::BoundaryMultiplier,
                    "|1+h p0||1+h p1| is within tolerance of 1; no Ulam constant exists");
    const double denom = std::abs(1.0 - product);
    return h * std::max((1.0 + a0) / denom, (1.0 + a1) / denom);
}

double expanding_minimum_constant(const CoefficientCycle& cycle, double classification_tol) {
    const StabilityReport r = ulam_constant(cycle, classification_tol);
    if (r.stability.tag != StabilityTag::StableExpanding)
        throw Error(ErrorCode::NotExpanding, "multiplier rho = " + std::to_string(r.rho) +
                                                 " is not above 1 + tol");
    return cycle.h() * r.rho * r.sums[r.argmax_residue] / (r.rho - 1.0);
}

double initial_radius(const CoefficientCycle& cycle, double epsilon, double classification_tol) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
    const double rho = multiplier(cycle).rho;
    if (classify(rho, classification_tol).tag != StabilityTag::StableContracting)
        throw Error(ErrorCode::NotContracting, "multiplier rho = " + std::to_string(rho) +
                                                   " is not below 1 - tol");
    const double s0 = partial_sums(cycle)[0];
    return epsilon * cycle.h() * rho * s0 / (1.0 - rho);
}

}  // namespace ulam
