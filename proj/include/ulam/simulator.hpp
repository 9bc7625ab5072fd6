#pragma once

// Forward simulation of
//
//     Δ_h φ(t) - p(t) φ(t) = q(t)            (forced)
//     Δ_h φ(t) - p(t) φ(t) = f(t, φ(t))      (perturbed)
//
// by the exact stepping recurrence φ(t+h) = (1 + h p(t)) φ(t) + h q(t).

#include "ulam/core.hpp"
#include "ulam/exponential.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace ulam {

enum class PerturbationKind { Zero, ConstantEpsilon, PhaseAligned, RandomBounded, Explicit };

const char* to_string(PerturbationKind kind);

/// Rule producing forcing samples q(jh) with |q| <= epsilon.
class PerturbationSpec {
public:
    static PerturbationSpec zero(double epsilon);
    /// q == epsilon
    static PerturbationSpec constant(double epsilon);
    /// q(kh) = epsilon e_p(kh+h) / |e_p(kh+h)|
    static PerturbationSpec phase_aligned(double epsilon);
    /// Uniform on the closed disk of radius epsilon, reproducible per seed.
    static PerturbationSpec random_bounded(double epsilon, std::uint64_t seed);
    /// Throws PerturbationBoundViolated if any |sample| > epsilon.
    static PerturbationSpec explicit_samples(double epsilon, GridFunction samples);

    double epsilon() const { return epsilon_; }
    PerturbationKind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }

    /// The first `count` samples. Explicit specs throw InsufficientSamples when short.
    GridFunction generate(const CoefficientCycle& cycle, std::size_t count) const;

private:
    PerturbationSpec(double epsilon, PerturbationKind kind);

    double epsilon_;
    PerturbationKind kind_;
    std::uint64_t seed_ = 0;
    GridFunction samples_;
};

/// Values x0 e_p(jh) for j = 0..steps.
Trajectory solve_homogeneous(const CoefficientCycle& cycle, Complex x0, std::size_t steps);

/// Values φ(jh) for j = 0..steps; q must hold at least `steps` samples.
Trajectory solve_forced(const CoefficientCycle& cycle, Complex phi0, const GridFunction& q,
                        std::size_t steps);

using Forcing = std::function<Complex(GridTime, Complex)>;

/// Values φ(jh) for j = 0..steps. Exceptions or non-finite values from f
/// surface as Error(CallbackFailure).
Trajectory solve_perturbed(const CoefficientCycle& cycle, Complex phi0, const Forcing& f,
                           std::size_t steps);

/// q(jh) = (φ((j+1)h) - φ(jh)) / h - p(jh) φ(jh); one sample shorter than phi.
GridFunction residual(const CoefficientCycle& cycle, const Trajectory& phi);

/// Log-domain homogeneous trajectory, usable past the overflow horizon.
std::vector<LogValue> homogeneous_log_trajectory(const CoefficientCycle& cycle, Complex x0,
                                                 std::size_t steps);

/// x_0 = φ(0) + sum_k h q(kh) / e_p(kh+h), the coefficient of the solution
/// tracked by φ when the cycle is expanding.
struct LimitSolution {
    Complex x0;
    double remainder = 0.0;         ///< bound on the truncated tail
    double epsilon_estimate = 0.0;  ///< max |q| over the samples that were provided
    std::size_t periods = 0;        ///< full periods summed
};

/// Sums `periods` full periods of the series.
LimitSolution limit_solution_truncated(const CoefficientCycle& cycle, Complex phi0,
                                       const GridFunction& q, std::size_t periods,
                                       double classification_tol = 1e-9);

/// Picks the smallest period count whose tail bound is <= tol. A tol of
/// nullopt means 1e-9 K_n eps. Throws InsufficientSamples when q is too short.
LimitSolution limit_solution(const CoefficientCycle& cycle, Complex phi0, const GridFunction& q,
                             std::optional<double> tol = std::nullopt,
                             double classification_tol = 1e-9);

/// φ(jh) - x_0 e_p(jh) for j = 0..q.size(), evaluated as the series tail
/// -sum_{k>=j} h q(kh) e_p(jh)/e_p(kh+h) by backward recursion. Samples
/// beyond q are taken as zero, so this is exact for the forcing q padded
/// with zeros and stays accurate where the direct difference would cancel.
std::vector<Complex> tracking_deviation(const CoefficientCycle& cycle, const GridFunction& q);

/// `step,t,re,im,abs` header then one row per sample, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Reads the format above; h is recovered from the t column (1 if only one row).
GridFunction read_trajectory_csv(std::istream& in);

}  // namespace ulam
