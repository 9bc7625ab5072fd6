#include "ulam/exponential.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

namespace ulam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kLogMax = std::log(DBL_MAX);
const double kLogMin = std::log(DBL_MIN);

Complex integer_power(Complex base, std::uint64_t m) {
    Complex result{1.0, 0.0};
    while (m != 0) {
        if (m & 1u) result *= base;
        m >>= 1;
        if (m != 0) base *= base;
    }
    return result;
}

}  // namespace

double reduce_phase(double phase) {
    double r = std::remainder(phase, kTwoPi);
    if (r <= -std::numbers::pi) r += kTwoPi;
    return r;
}

Complex LogValue::value() const {
    return std::polar(std::exp(log_magnitude), phase);
}

Multiplier multiplier(const CoefficientCycle& cycle) {
    const std::size_t n = cycle.period();
    Multiplier m;
    m.partial_log_mags.resize(n);
    m.partial_phases.resize(n);
    m.partial_values.resize(n);

    double log_mag = 0.0;
    double phase = 0.0;
    Complex value{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        m.partial_log_mags[k] = log_mag;
        m.partial_phases[k] = phase;
        m.partial_values[k] = value;
        const Complex f = cycle.factor(k);
        log_mag += std::log(std::abs(f));
        phase = reduce_phase(phase + std::arg(f));
        value *= f;
    }
    m.log_rho = log_mag;
    m.period_phase = phase;
    m.period_value = value;

    double rho = 1.0;
    for (std::size_t k = 0; k < n; ++k) rho *= std::abs(cycle.factor(k));
    m.rho = std::isfinite(rho) && rho > 0.0 ? rho : std::exp(log_mag);
    return m;
}

Exponential::Exponential(const CoefficientCycle& cycle) : data_(ulam::multiplier(cycle)) {}

double Exponential::log_magnitude(GridTime t) const {
    const std::uint64_t n = period();
    const std::uint64_t m = t.step / n;
    const std::size_t k = static_cast<std::size_t>(t.step % n);
    return static_cast<double>(m) * data_.log_rho + data_.partial_log_mags[k];
}

LogValue Exponential::log_at(GridTime t) const {
    const std::uint64_t n = period();
    const std::uint64_t m = t.step / n;
    const std::size_t k = static_cast<std::size_t>(t.step % n);
    const double turns = reduce_phase(static_cast<double>(m) * data_.period_phase);
    return {static_cast<double>(m) * data_.log_rho + data_.partial_log_mags[k],
            reduce_phase(turns + data_.partial_phases[k])};
}

Complex Exponential::at(GridTime t) const {
    const std::uint64_t n = period();
    const std::uint64_t m = t.step / n;
    const std::size_t k = static_cast<std::size_t>(t.step % n);
    const double log_mag = log_magnitude(t);
    if (log_mag > kLogMax)
        throw Error(ErrorCode::Overflow, "|e_p(t)| exceeds the double range; use log_ep");
    if (log_mag < kLogMin)
        throw Error(ErrorCode::Overflow, "|e_p(t)| underflows the double range; use log_ep");
    if (m == 0) return data_.partial_values[k];

    const double power_log = static_cast<double>(m) * data_.log_rho;
    if (std::abs(power_log) < kLogMax - 1.0 && is_finite(data_.partial_values[k])) {
        const Complex v = integer_power(data_.period_value, m) * data_.partial_values[k];
        if (is_finite(v) && v != Complex{}) return v;
    }
    return log_at(t).value();
}

Complex ep(const CoefficientCycle& cycle, GridTime t) {
    return Exponential(cycle).at(t);
}

LogValue log_ep(const CoefficientCycle& cycle, GridTime t) {
    return Exponential(cycle).log_at(t);
}

}  // namespace ulam
