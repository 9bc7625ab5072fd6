#include "ulam/witness.hpp"

#include "ulam/exponential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace ulam {

const char* to_string(WitnessMode mode) {
    return mode == WitnessMode::Instability ? "instability" : "sharpness";
}

namespace {

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
}

StabilityReport require_expanding(const CoefficientCycle& cycle, double tol) {
    StabilityReport r = ulam_constant(cycle, tol);
    if (r.stability.tag != StabilityTag::StableExpanding)
        throw Error(ErrorCode::NotExpanding,
                    "sharpness needs rho > 1, got rho = " + std::to_string(r.rho));
    return r;
}

double max_abs(std::span<const Complex> values) {
    double m = 0.0;
    for (const Complex& v : values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

std::vector<double> tracking_error_profile(const CoefficientCycle& cycle, double epsilon,
                                           double classification_tol) {
    require_epsilon(epsilon);
    const StabilityReport r = require_expanding(cycle, classification_tol);
    std::vector<double> profile(r.sums.size());
    for (std::size_t k = 0; k < profile.size(); ++k)
        profile[k] = cycle.h() * epsilon * r.rho * r.sums[k] / (r.rho - 1.0);
    return profile;
}

WitnessReport instability_witness(const CoefficientCycle& cycle, double epsilon,
                                  std::size_t steps, double classification_tol) {
    require_epsilon(epsilon);
    if (steps < 1) throw Error(ErrorCode::InvalidArgument, "witness needs at least one step");
    const Multiplier m = multiplier(cycle);
    if (classify(m.rho, classification_tol).tag != StabilityTag::NotUlamStable)
        throw Error(ErrorCode::NotOnBoundary,
                    "instability witness needs rho = 1, got rho = " + std::to_string(m.rho));

    const std::size_t n = cycle.period();
    const double h = cycle.h();
    // |e_p(kh)| for k = 0..n; index n is rho.
    std::vector<double> mags(n + 1);
    for (std::size_t k = 0; k < n; ++k) mags[k] = std::exp(m.partial_log_mags[k]);
    mags[n] = m.rho;
    const double max_mag = *std::max_element(mags.begin() + 1, mags.end());
    const double min_mag = *std::min_element(mags.begin(), mags.end() - 1);

    WitnessReport w;
    w.mode = WitnessMode::Instability;
    w.epsilon = epsilon;
    w.ell = 1.0 / max_mag;
    w.periods = steps / n;

    const Trajectory e = solve_homogeneous(cycle, Complex{1.0, 0.0}, steps);
    w.phi = Trajectory{h, std::vector<Complex>(steps + 1)};
    for (std::size_t j = 0; j <= steps; ++j)
        w.phi.values[j] = epsilon * w.ell * (static_cast<double>(j) * h) * e[j];
    w.q = residual(cycle, w.phi);
    w.max_residual = max_abs(w.q.values);
    // Residual is eps l |e_p(t+h)| <= eps; allow rounding in e_p and the differencing.
    if (w.max_residual > epsilon * (1.0 + 1e-9))
        throw Error(ErrorCode::PerturbationBoundViolated,
                    "instability witness residual exceeds epsilon");

    w.residue_profile.resize(n);
    for (std::size_t k = 0; k < n; ++k) w.residue_profile[k] = epsilon * w.ell * mags[k + 1];

    // Probe constants c = φ(t*)/e_p(t*) = eps l t* for anchors t* spanning
    // [0, 10 steps h], plus c = 0.
    constexpr std::size_t kAnchors = 64;
    w.probes.push_back(Complex{});
    for (std::size_t i = 1; i <= kAnchors; ++i) {
        const double anchor = 10.0 * static_cast<double>(steps) * h * static_cast<double>(i) /
                              static_cast<double>(kAnchors);
        w.probes.emplace_back(epsilon * w.ell * anchor, 0.0);
    }

    constexpr std::size_t kCheckpoints = 10;
    std::vector<std::size_t> checkpoints;
    for (std::size_t i = 1; i <= kCheckpoints; ++i)
        checkpoints.push_back(std::max<std::size_t>(1, steps * i / kCheckpoints));
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

    std::vector<double> min_sup(checkpoints.size(), std::numeric_limits<double>::infinity());
    for (const Complex& c : w.probes) {
        double sup = 0.0;
        std::size_t next = 0;
        for (std::size_t j = 0; j <= steps && next < checkpoints.size(); ++j) {
            sup = std::max(sup, std::abs(w.phi[j] - c * e[j]));
            if (j == checkpoints[next]) {
                min_sup[next] = std::min(min_sup[next], sup);
                ++next;
            }
        }
    }
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        const double lower = epsilon * w.ell * h * static_cast<double>(checkpoints[i]) * min_mag / 2.0;
        w.growth.push_back({checkpoints[i], min_sup[i], lower});
    }
    w.achieved_sup = min_sup.back();
    return w;
}

WitnessReport sharpness_witness(const CoefficientCycle& cycle, double epsilon,
                                std::size_t periods, double classification_tol) {
    require_epsilon(epsilon);
    const StabilityReport r = require_expanding(cycle, classification_tol);
    const std::size_t n = cycle.period();
    const double h = cycle.h();
    const double k_n = h * r.rho * r.sums[r.argmax_residue] / (r.rho - 1.0);

    WitnessReport w;
    w.mode = WitnessMode::Sharpness;
    w.epsilon = epsilon;
    w.periods = periods;
    w.target = k_n * epsilon;
    w.remainder = k_n * epsilon * std::pow(r.rho, -static_cast<double>(periods));
    w.residue_profile = tracking_error_profile(cycle, epsilon, classification_tol);

    // The window starting at the argmax residue covers exactly `periods` periods.
    const std::size_t horizon = periods * n + r.argmax_residue;
    w.q = PerturbationSpec::phase_aligned(epsilon).generate(cycle, horizon);
    w.phi = solve_forced(cycle, Complex{}, w.q, horizon);
    w.max_residual = max_abs(w.q.values);

    Complex inverse{1.0, 0.0};
    Complex x0{};
    for (std::size_t k = 0; k < horizon; ++k) {
        inverse /= cycle.factor(k % n);
        x0 += h * w.q[k] * inverse;
    }
    w.x0 = x0;

    w.achieved_sup = max_abs(tracking_deviation(cycle, w.q));
    return w;
}

namespace {

// One window of the brute-force search: maximise |sum_{k>=start} u_k g_k|
// over unit u_k by cyclic coordinate ascent.
void ascend(std::vector<Complex>& u, std::span<const Complex> g, std::size_t start,
            std::size_t max_sweeps) {
    Complex total{};
    for (std::size_t k = start; k < g.size(); ++k) total += u[k] * g[k];
    double best = std::abs(total);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        for (std::size_t k = start; k < g.size(); ++k) {
            const Complex rest = total - u[k] * g[k];
            const double rest_mag = std::abs(rest);
            const double g_mag = std::abs(g[k]);
            if (rest_mag == 0.0 || g_mag == 0.0) continue;
            u[k] = (rest / rest_mag) * (std::conj(g[k]) / g_mag);
            total = rest + u[k] * g[k];
        }
        // Recompute to keep drift from the incremental updates out of the test.
        total = Complex{};
        for (std::size_t k = start; k < g.size(); ++k) total += u[k] * g[k];
        const double now = std::abs(total);
        if (now <= best * (1.0 + 1e-15)) break;
        best = now;
    }
}

}  // namespace

double brute_force_sup(const CoefficientCycle& cycle, double epsilon, std::size_t periods,
                       const BruteForceOptions& options, double classification_tol) {
    require_epsilon(epsilon);
    if (options.phase_samples < 1)
        throw Error(ErrorCode::InvalidArgument, "brute force needs at least one phase sample");
    const StabilityReport r = require_expanding(cycle, classification_tol);
    const std::size_t n = cycle.period();
    const std::size_t horizon = periods * n + r.argmax_residue;

    // g_k = 1 / e_p((k+1)h)
    std::vector<Complex> g(horizon);
    Complex inverse{1.0, 0.0};
    for (std::size_t k = 0; k < horizon; ++k) {
        inverse /= cycle.factor(k % n);
        g[k] = inverse;
    }

    const double step = 2.0 * std::numbers::pi / static_cast<double>(options.phase_samples);
    std::vector<std::vector<Complex>> starts;
    for (std::size_t i = 0; i < options.phase_samples; ++i)
        starts.emplace_back(horizon, std::polar(1.0, step * static_cast<double>(i)));
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, options.phase_samples - 1);
    for (std::size_t i = 0; i < options.restarts; ++i) {
        std::vector<Complex> u(horizon);
        for (auto& v : u) v = std::polar(1.0, step * static_cast<double>(pick(rng)));
        starts.push_back(std::move(u));
    }

    GridFunction q{cycle.h(), std::vector<Complex>(horizon)};
    double best = 0.0;
    for (std::size_t window = 0; window < std::min(n, horizon); ++window) {
        for (const auto& start : starts) {
            std::vector<Complex> u = start;
            ascend(u, g, window, options.max_sweeps);
            for (std::size_t k = 0; k < horizon; ++k) q.values[k] = epsilon * u[k];
            best = std::max(best, max_abs(tracking_deviation(cycle, q)));
        }
    }
    return best;
}

}  // namespace ulam
