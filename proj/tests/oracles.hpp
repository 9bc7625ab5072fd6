#pragma once

// Reference computations that share no code with the library. Everything is
// evaluated straight from the defining products and sums in long double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using LComplex = std::complex<long double>;
using Complex = std::complex<double>;

inline LComplex widen(Complex z) { return {z.real(), z.imag()}; }
inline Complex narrow(LComplex z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// e_p(jh): term-by-term product of 1 + h p(ih), i < j.
inline LComplex ep(double h, const std::vector<Complex>& p, std::size_t j) {
    LComplex v{1.0L, 0.0L};
    for (std::size_t i = 0; i < j; ++i) v *= 1.0L + static_cast<long double>(h) * widen(p[i % p.size()]);
    return v;
}

inline long double rho(double h, const std::vector<Complex>& p) {
    return std::abs(ep(h, p, p.size()));
}

// S_k straight from the definition: sum over j of 1/(|f_k| ... |f_{k+j-1}|).
inline std::vector<long double> sums(double h, const std::vector<Complex>& p) {
    const std::size_t n = p.size();
    std::vector<long double> s(n, 0.0L);
    for (std::size_t k = 0; k < n; ++k) {
        long double prod = 1.0L;
        for (std::size_t j = 1; j <= n; ++j) {
            prod *= std::abs(1.0L + static_cast<long double>(h) * widen(p[(k + j - 1) % n]));
            s[k] += 1.0L / prod;
        }
    }
    return s;
}

inline long double constant(double h, const std::vector<Complex>& p) {
    const auto s = sums(h, p);
    const long double r = rho(h, p);
    return static_cast<long double>(h) * r * *std::max_element(s.begin(), s.end()) /
           std::fabs(1.0L - r);
}

// Period-two constant: h max(1 + a0, 1 + a1) / |1 - a0 a1|.
inline long double two_cycle(double h, Complex p0, Complex p1) {
    const long double a0 = std::abs(1.0L + static_cast<long double>(h) * widen(p0));
    const long double a1 = std::abs(1.0L + static_cast<long double>(h) * widen(p1));
    return static_cast<long double>(h) * std::max(1.0L + a0, 1.0L + a1) / std::fabs(1.0L - a0 * a1);
}

// Variation of constants:
// φ(jh) = e_p(jh) (φ(0) + sum_{k<j} h q(kh) / e_p(kh + h)).
inline std::vector<LComplex> variation_of_constants(double h, const std::vector<Complex>& p,
                                                    Complex phi0, const std::vector<Complex>& q,
                                                    std::size_t steps) {
    std::vector<LComplex> out;
    out.reserve(steps + 1);
    LComplex acc = widen(phi0);
    for (std::size_t j = 0; j <= steps; ++j) {
        out.push_back(ep(h, p, j) * acc);
        if (j < steps) acc += static_cast<long double>(h) * widen(q[j]) / ep(h, p, j + 1);
    }
    return out;
}

// sum_{k>=0} a r^k for |r| < 1.
inline long double geometric(long double a, long double r) { return a / (1.0L - r); }

inline double relative(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace oracle
