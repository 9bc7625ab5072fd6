#pragma once

// Discrete exponential e_p(t) = prod_{j=0}^{t/h-1} (1 + h p(jh)), e_p(0) = 1.
//
// Periodicity gives e_p(m n h + k h) = e_p(n h)^m e_p(k h), so after O(n)
// precomputation every evaluation is O(log m) or O(1) in log form.

#include "ulam/core.hpp"

#include <vector>

namespace ulam {

/// Per-period data of e_p. rho = |e_p(n h)| is the Floquet-type multiplier.
struct Multiplier {
    double rho = 1.0;
    double log_rho = 0.0;
    std::vector<double> partial_log_mags;  ///< log|e_p(k h)|, k = 0..n-1
    std::vector<double> partial_phases;    ///< arg e_p(k h) in (-pi, pi], k = 0..n-1
    std::vector<Complex> partial_values;   ///< e_p(k h), k = 0..n-1
    Complex period_value{1.0, 0.0};        ///< e_p(n h)
    double period_phase = 0.0;             ///< arg e_p(n h)
};

Multiplier multiplier(const CoefficientCycle& cycle);

/// exp(log_magnitude) * exp(i phase); phase is reduced to (-pi, pi].
struct LogValue {
    double log_magnitude = 0.0;
    double phase = 0.0;

    Complex value() const;
};

/// Reduce an angle to (-pi, pi].
double reduce_phase(double phase);

/// Cached evaluator for e_p of one cycle.
class Exponential {
public:
    explicit Exponential(const CoefficientCycle& cycle);

    const Multiplier& multiplier() const { return data_; }
    std::size_t period() const { return data_.partial_values.size(); }

    /// e_p(t). Throws Error(Overflow) when |e_p(t)| leaves the normal double range.
    Complex at(GridTime t) const;
    LogValue log_at(GridTime t) const;
    double log_magnitude(GridTime t) const;

private:
    Multiplier data_;
};

Complex ep(const CoefficientCycle& cycle, GridTime t);
LogValue log_ep(const CoefficientCycle& cycle, GridTime t);

}  // namespace ulam
