#pragma once

// Seeded generators for random cycles used by the verification suites.

#include "ulam/core.hpp"

#include <random>
#include <span>

namespace ulam {

/// Cycle with p_k = (factors[k] - 1) / h.
CoefficientCycle cycle_from_factors(double h, std::span<const Complex> factors);

/// n random complex factors rescaled so the multiplier is rho.
CoefficientCycle random_cycle(std::mt19937_64& rng, std::size_t n, double h, double rho);

/// Multiplier one. With on_circle every factor has modulus one (all p_k on
/// the Hilger circle); otherwise the moduli vary and only their product is one.
CoefficientCycle random_boundary_cycle(std::mt19937_64& rng, std::size_t n, double h,
                                       bool on_circle);

}  // namespace ulam
