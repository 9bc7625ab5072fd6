#include "ulam/core.hpp"

#include <cmath>
#include <utility>

namespace ulam {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPositiveStep: return "NonPositiveStep";
    case ErrorCode::EmptyCycle: return "EmptyCycle";
    case ErrorCode::SingularCoefficient: return "SingularCoefficient";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::CallbackFailure: return "CallbackFailure";
    case ErrorCode::BoundaryMultiplier: return "BoundaryMultiplier";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::NotExpanding: return "NotExpanding";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::UnsupportedPeriod: return "UnsupportedPeriod";
    case ErrorCode::PerturbationBoundViolated: return "PerturbationBoundViolated";
    case ErrorCode::CertificateViolated: return "CertificateViolated";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      index_(index) {}

bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

std::size_t minimal_period(std::span<const Complex> coefficients) {
    const std::size_t n = coefficients.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t k = 0; k < n && periodic; ++k)
            periodic = coefficients[k] == coefficients[(k + d) % n];
        if (periodic) return d;
    }
    return n;
}

CoefficientCycle::CoefficientCycle(double h, std::vector<Complex> coefficients,
                                   std::size_t minimal)
    : h_(h), coefficients_(std::move(coefficients)), minimal_period_(minimal) {}

CoefficientCycle CoefficientCycle::validate(double h, std::vector<Complex> coefficients) {
    if (!std::isfinite(h)) throw Error(ErrorCode::NonFinite, "step size is not finite");
    if (h <= 0.0) throw Error(ErrorCode::NonPositiveStep, "step size must be positive");
    if (coefficients.empty()) throw Error(ErrorCode::EmptyCycle, "cycle has no coefficients");
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (!is_finite(coefficients[k]))
            throw Error(ErrorCode::NonFinite, "coefficient " + std::to_string(k) + " is not finite", k);
        const Complex f = 1.0 + h * coefficients[k];
        if (!is_finite(f))
            throw Error(ErrorCode::NonFinite, "factor 1 + h p_" + std::to_string(k) + " overflows", k);
        if (std::abs(f) < kValidationFloor)
            throw Error(ErrorCode::SingularCoefficient,
                        "1 + h p_" + std::to_string(k) + " vanishes (p_k = -1/h)", k);
    }
    const std::size_t minimal = ulam::minimal_period(std::span<const Complex>(coefficients));
    return CoefficientCycle(h, std::move(coefficients), minimal);
}

bool CoefficientCycle::has_near_singular_factor() const {
    for (std::size_t k = 0; k < period(); ++k)
        if (std::abs(factor(k)) < kNearSingularFactor) return true;
    return false;
}

CoefficientCycle CoefficientCycle::repeated(std::size_t m) const {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "repeat count must be positive");
    std::vector<Complex> out;
    out.reserve(m * period());
    for (std::size_t i = 0; i < m; ++i)
        out.insert(out.end(), coefficients_.begin(), coefficients_.end());
    return CoefficientCycle(h_, std::move(out), minimal_period_);
}

CoefficientCycle CoefficientCycle::rotated(std::size_t r) const {
    const std::size_t n = period();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = coefficients_[(k + r) % n];
    return CoefficientCycle(h_, std::move(out), minimal_period_);
}

CoefficientCycle CoefficientCycle::reduced() const {
    std::vector<Complex> out(coefficients_.begin(),
                             coefficients_.begin() + static_cast<std::ptrdiff_t>(minimal_period_));
    return CoefficientCycle(h_, std::move(out), minimal_period_);
}

bool on_hilger_circle(Complex p, double h, double tol) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw Error(ErrorCode::NonPositiveStep, "step size must be positive");
    return std::abs(std::abs(1.0 + h * p) - 1.0) <= tol;
}

}  // namespace ulam
