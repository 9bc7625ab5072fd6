#pragma once

// Domain types for first-order linear h-difference equations
//
//     Δ_h x(t) - p(t) x(t) = 0,   Δ_h x(t) = (x(t+h) - x(t)) / h,
//
// on the uniform grid {0, h, 2h, ...} with an n-periodic complex coefficient p.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ulam {

using Complex = std::complex<double>;

enum class ErrorCode {
    NonPositiveStep,
    EmptyCycle,
    SingularCoefficient,
    NonFinite,
    InvalidArgument,
    Overflow,
    LengthMismatch,
    TooShort,
    InsufficientSamples,
    CallbackFailure,
    BoundaryMultiplier,
    NotOnBoundary,
    NotExpanding,
    NotContracting,
    UnsupportedPeriod,
    PerturbationBoundViolated,
    CertificateViolated,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what,
          std::optional<std::size_t> index = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    /// Offending coefficient or sample index, when there is one.
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

/// A point of the grid, held as its step index so that t/h is exact.
struct GridTime {
    std::uint64_t step = 0;

    constexpr double at(double h) const { return static_cast<double>(step) * h; }
    friend constexpr bool operator==(GridTime, GridTime) = default;
};

/// Sampled complex function on the grid: values[j] = f(j h).
struct GridFunction {
    double h = 1.0;
    std::vector<Complex> values;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    const Complex& operator[](std::size_t j) const { return values[j]; }
};

using Trajectory = GridFunction;

/// Factors |1 + h p_k| below this are treated as the excluded value p_k = -1/h.
inline constexpr double kValidationFloor = 1e-300;
/// Factors below this are admitted but reported as near-singular.
inline constexpr double kNearSingularFactor = 1e-8;

bool is_finite(Complex z);

/// Step size h together with p_0 ... p_{n-1}; p(t) = p_k when t/h ≡ k (mod n).
///
/// Instances only come out of validate(), so every held cycle satisfies
/// h > 0, n >= 1 and 1 + h p_k != 0.
class CoefficientCycle {
public:
    static CoefficientCycle validate(double h, std::vector<Complex> coefficients);

    double h() const { return h_; }
    std::size_t period() const { return coefficients_.size(); }
    std::span<const Complex> coefficients() const { return coefficients_; }
    const Complex& operator[](std::size_t k) const { return coefficients_[k]; }

    /// 1 + h p_k
    Complex factor(std::size_t k) const { return 1.0 + h_ * coefficients_[k]; }

    Complex coefficient_at(GridTime t) const {
        return coefficients_[static_cast<std::size_t>(t.step % coefficients_.size())];
    }

    std::size_t minimal_period() const { return minimal_period_; }
    bool is_minimal() const { return minimal_period_ == coefficients_.size(); }
    bool has_near_singular_factor() const;

    /// The same coefficient function declared with period m n.
    CoefficientCycle repeated(std::size_t m) const;
    /// Coefficients rotated left by r: new p_k = p_{(k + r) mod n}.
    CoefficientCycle rotated(std::size_t r) const;
    /// The same coefficient function declared with its minimal period.
    CoefficientCycle reduced() const;

private:
    CoefficientCycle(double h, std::vector<Complex> coefficients, std::size_t minimal);

    double h_;
    std::vector<Complex> coefficients_;
    std::size_t minimal_period_;
};

inline Complex coefficient_at(const CoefficientCycle& cycle, GridTime t) {
    return cycle.coefficient_at(t);
}

std::size_t minimal_period(std::span<const Complex> coefficients);

inline std::size_t minimal_period(const CoefficientCycle& cycle) {
    return cycle.minimal_period();
}

/// True iff p lies within tol of the Hilger circle, i.e. ||1 + h p| - 1| <= tol.
bool on_hilger_circle(Complex p, double h, double tol);

}  // namespace ulam
