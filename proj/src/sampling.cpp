#include "ulam/sampling.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ulam {

CoefficientCycle cycle_from_factors(double h, std::span<const Complex> factors) {
    std::vector<Complex> p(factors.size());
    for (std::size_t k = 0; k < factors.size(); ++k) p[k] = (factors[k] - 1.0) / h;
    return CoefficientCycle::validate(h, std::move(p));
}

namespace {

std::vector<Complex> random_factors(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> log_mag(std::log(0.3), std::log(3.0));
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<Complex> f(n);
    for (auto& v : f) v = std::polar(std::exp(log_mag(rng)), angle(rng));
    return f;
}

}  // namespace

CoefficientCycle random_cycle(std::mt19937_64& rng, std::size_t n, double h, double rho) {
    if (n == 0) throw Error(ErrorCode::EmptyCycle, "cycle has no coefficients");
    if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
    std::vector<Complex> f = random_factors(rng, n);
    double log_rho = 0.0;
    for (const Complex& v : f) log_rho += std::log(std::abs(v));
    const double scale = std::exp((std::log(rho) - log_rho) / static_cast<double>(n));
    for (auto& v : f) v *= scale;
    return cycle_from_factors(h, f);
}

CoefficientCycle random_boundary_cycle(std::mt19937_64& rng, std::size_t n, double h,
                                       bool on_circle) {
    if (n == 0) throw Error(ErrorCode::EmptyCycle, "cycle has no coefficients");
    std::vector<Complex> f = random_factors(rng, n);
    if (on_circle) {
        for (auto& v : f) v /= std::abs(v);
    } else {
        double log_rest = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) log_rest += std::log(std::abs(f[k]));
        const Complex last = f[n - 1] / std::abs(f[n - 1]);
        f[n - 1] = last * std::exp(-log_rest);
    }
    return cycle_from_factors(h, f);
}

}  // namespace ulam
