#include "ulam/suites.hpp"

#include "ulam/exponential.hpp"
#include "ulam/sampling.hpp"
#include "ulam/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace ulam {

bool SuiteResult::passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const SuiteCase& c) { return c.passed; });
}

Json SuiteResult::to_json() const {
    std::size_t failures = 0;
    const SuiteCase* worst = nullptr;
    Json failing = Json::array();
    for (const SuiteCase& c : cases) {
        if (!c.passed) {
            ++failures;
            if (failing.size() < 20)
                failing.push_back({{"label", c.label}, {"observed", c.observed},
                                   {"bound", c.bound}, {"note", c.note}});
        }
        if (worst == nullptr || c.margin < worst->margin) worst = &c;
    }
    Json j;
    j["suite"] = suite;
    j["passed"] = passed();
    j["cases"] = cases.size();
    j["failures"] = failures;
    if (worst != nullptr)
        j["worst"] = {{"label", worst->label}, {"observed", worst->observed},
                      {"bound", worst->bound}, {"margin", worst->margin}, {"note", worst->note}};
    j["failing"] = failing;
    return j;
}

namespace {

constexpr double kOracleRelativeGap = 1e-6;
constexpr double kOracleCeiling = 1e-9;

SuiteCase sharpness_case(const std::string& label, const CoefficientCycle& cycle, double epsilon,
                         std::size_t periods, std::uint64_t seed, double tol) {
    const StabilityReport r = ulam_constant(cycle, tol);
    const double target = *r.K * epsilon;
    const WitnessReport w = sharpness_witness(cycle, epsilon, periods, tol);
    const double lower = target * (1.0 - std::pow(r.rho, -static_cast<double>(periods)));

    // The oracle runs long enough that truncation alone is below the gap bound.
    const auto oracle_periods = std::max<std::size_t>(
        periods, static_cast<std::size_t>(std::ceil(std::log(1e8) / std::log(r.rho))) + 1);
    BruteForceOptions options;
    options.seed = seed;
    const double oracle = brute_force_sup(cycle, epsilon, oracle_periods, options, tol);
    const double gap = (target - oracle) / target;

    SuiteCase c;
    c.label = label;
    c.observed = gap;
    c.bound = kOracleRelativeGap;
    c.margin = kOracleRelativeGap - std::abs(gap);
    const bool witness_ok = w.achieved_sup >= lower * (1.0 - 1e-12) &&
                            w.achieved_sup <= target * (1.0 + 1e-12);
    const bool ceiling_ok = oracle <= target * (1.0 + kOracleCeiling);
    const bool sandwich_ok = w.achieved_sup <= oracle * (1.0 + 1e-12);
    c.passed = witness_ok && ceiling_ok && sandwich_ok && std::abs(gap) <= kOracleRelativeGap;
    if (!witness_ok) c.note += "witness below K eps (1 - rho^-periods); ";
    if (!ceiling_ok) c.note += "oracle exceeds K eps; ";
    if (!sandwich_ok) c.note += "witness exceeds oracle; ";
    return c;
}

}  // namespace

SuiteResult sharpness_suite(const ProblemConfig& config, std::size_t trials) {
    SuiteResult result{"sharpness", {}};
    const CoefficientCycle cycle = config.cycle();
    const double tol = config.classification_tol;
    if (classify(cycle, tol).tag == StabilityTag::StableExpanding)
        result.cases.push_back(sharpness_case("config", cycle, config.epsilon,
                                              config.horizon_periods, config.seed, tol));
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::size_t> period(1, 5);
    std::uniform_real_distribution<double> rho(1.05, 4.0);
    for (std::size_t i = 0; i < trials; ++i) {
        const std::size_t n = period(rng);
        const CoefficientCycle random = random_cycle(rng, n, config.h, rho(rng));
        result.cases.push_back(sharpness_case("random " + std::to_string(i), random,
                                              config.epsilon, config.horizon_periods,
                                              config.seed + i + 1, tol));
    }
    return result;
}

SuiteResult contracting_suite(const ProblemConfig& config, std::size_t trials) {
    SuiteResult result{"contracting", {}};
    const CoefficientCycle cycle = config.cycle();
    const double eps = config.epsilon;
    const double radius = initial_radius(cycle, eps, config.classification_tol);
    const double bound = *ulam_constant(cycle, config.classification_tol).K * eps;
    const std::size_t steps = config.horizon_periods * cycle.period();

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Trajectory e = solve_homogeneous(cycle, Complex{1.0, 0.0}, steps);
    for (std::size_t i = 0; i < trials; ++i) {
        const GridFunction q =
            PerturbationSpec::random_bounded(eps, config.seed + i).generate(cycle, steps);
        const Complex phi0 = std::polar(10.0 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
        const Complex offset =
            std::polar(radius * unit(rng), 2.0 * std::numbers::pi * unit(rng));
        const Trajectory phi = solve_forced(cycle, phi0, q, steps);
        const Complex x0 = phi0 - offset;
        double worst = 0.0;
        for (std::size_t j = 0; j <= steps; ++j)
            worst = std::max(worst, std::abs(phi[j] - x0 * e[j]));
        SuiteCase c;
        c.label = "draw " + std::to_string(i);
        c.observed = worst;
        c.bound = bound;
        c.margin = bound - worst;
        c.passed = worst < bound;
        result.cases.push_back(c);
    }
    return result;
}

std::size_t predicted_separation_periods(const CoefficientCycle& cycle, double k_n_eps,
                                         double offset) {
    const Multiplier m = multiplier(cycle);
    const double min_log =
        *std::min_element(m.partial_log_mags.begin(), m.partial_log_mags.end());
    const double periods = (std::log(2.0 * k_n_eps / offset) - min_log) / m.log_rho;
    return static_cast<std::size_t>(std::max(0.0, std::ceil(periods))) + 1;
}

SeparationObservation observe_separation(const CoefficientCycle& cycle, Complex phi0,
                                         const GridFunction& q, Complex x0, Complex c,
                                         double k_n_eps, std::size_t periods) {
    const std::size_t n = cycle.period();
    const std::size_t steps = periods * n;
    const Trajectory phi = solve_forced(cycle, phi0, q, steps);
    const Trajectory x1 = solve_homogeneous(cycle, x0, steps);
    const Trajectory x2 = solve_homogeneous(cycle, c, steps);

    SeparationObservation obs;
    obs.whole_period = std::numeric_limits<std::size_t>::max();
    obs.first_exit_step = std::numeric_limits<std::size_t>::max();
    for (std::size_t m = 0; m < periods; ++m) {
        bool all_separated = true;
        bool all_exited = true;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t j = m * n + k;
            obs.max_tracked = std::max(obs.max_tracked, std::abs(phi[j] - x1[j]));
            const bool exited = std::abs(phi[j] - x2[j]) > k_n_eps;
            if (exited && obs.first_exit_step == std::numeric_limits<std::size_t>::max())
                obs.first_exit_step = j;
            all_exited = all_exited && exited;
            all_separated = all_separated && std::abs(x1[j] - x2[j]) > 2.0 * k_n_eps;
        }
        if (all_separated && obs.whole_period == std::numeric_limits<std::size_t>::max()) {
            obs.whole_period = m;
            obs.exited_in_whole_period = all_exited;
        }
    }
    return obs;
}

SuiteResult uniqueness_suite(const ProblemConfig& config, std::size_t trials) {
    SuiteResult result{"uniqueness", {}};
    const CoefficientCycle cycle = config.cycle();
    const double eps = config.epsilon;
    const double k_n = expanding_minimum_constant(cycle, config.classification_tol);
    const double k_n_eps = k_n * eps;
    const double offset = k_n_eps * 1e-3;
    const std::size_t n = cycle.period();
    const double rho = multiplier(cycle).rho;
    const std::size_t predicted = predicted_separation_periods(cycle, k_n_eps, offset);
    // Enough forcing for the observation window plus the limit-solution tail.
    const std::size_t tail = static_cast<std::size_t>(std::ceil(std::log(1e12) / std::log(rho))) + 2;
    const std::size_t samples = (predicted + 2 + tail) * n;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < trials; ++i) {
        const GridFunction q =
            PerturbationSpec::random_bounded(eps, config.seed + i).generate(cycle, samples);
        const Complex phi0 = std::polar(unit(rng), 2.0 * std::numbers::pi * unit(rng));
        const Complex x0 = limit_solution(cycle, phi0, q, std::nullopt, config.classification_tol).x0;
        const Complex c = x0 + std::polar(offset, 2.0 * std::numbers::pi * unit(rng));
        const SeparationObservation obs =
            observe_separation(cycle, phi0, q, x0, c, k_n_eps, predicted + 2);

        SuiteCase sc;
        sc.label = "offset " + std::to_string(i);
        sc.bound = static_cast<double>(predicted);
        const bool found = obs.whole_period != std::numeric_limits<std::size_t>::max();
        sc.observed = found ? static_cast<double>(obs.whole_period) : -1.0;
        const double diff = std::abs(sc.observed - sc.bound);
        sc.margin = 1.0 - diff;
        const bool tracked_ok = obs.max_tracked <= k_n_eps;
        const bool exit_ok = found && obs.exited_in_whole_period &&
                             obs.first_exit_step / n <= predicted;
        sc.passed = found && diff <= 1.0 && tracked_ok && exit_ok;
        if (!found) sc.note += "no separation within the window; ";
        if (!tracked_ok) sc.note += "tracked solution left the K_n eps tube; ";
        if (found && !exit_ok) sc.note += "second solution stayed in the tube; ";
        result.cases.push_back(sc);
    }
    return result;
}

}  // namespace ulam
