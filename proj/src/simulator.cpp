#include "ulam/simulator.hpp"

#include "ulam/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace ulam {

const char* to_string(PerturbationKind kind) {
    switch (kind) {
    case PerturbationKind::Zero: return "zero";
    case PerturbationKind::ConstantEpsilon: return "const";
    case PerturbationKind::PhaseAligned: return "phase";
    case PerturbationKind::RandomBounded: return "random";
    case PerturbationKind::Explicit: return "explicit";
    }
    return "unknown";
}

PerturbationSpec::PerturbationSpec(double epsilon, PerturbationKind kind)
    : epsilon_(epsilon), kind_(kind) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
}

PerturbationSpec PerturbationSpec::zero(double epsilon) {
    return {epsilon, PerturbationKind::Zero};
}

PerturbationSpec PerturbationSpec::constant(double epsilon) {
    return {epsilon, PerturbationKind::ConstantEpsilon};
}

PerturbationSpec PerturbationSpec::phase_aligned(double epsilon) {
    return {epsilon, PerturbationKind::PhaseAligned};
}

PerturbationSpec PerturbationSpec::random_bounded(double epsilon, std::uint64_t seed) {
    PerturbationSpec spec{epsilon, PerturbationKind::RandomBounded};
    spec.seed_ = seed;
    return spec;
}

PerturbationSpec PerturbationSpec::explicit_samples(double epsilon, GridFunction samples) {
    PerturbationSpec spec{epsilon, PerturbationKind::Explicit};
    for (std::size_t j = 0; j < samples.size(); ++j) {
        if (!is_finite(samples[j]))
            throw Error(ErrorCode::NonFinite, "forcing sample is not finite", j);
        if (std::abs(samples[j]) > epsilon)
            throw Error(ErrorCode::PerturbationBoundViolated,
                        "|q(jh)| exceeds epsilon at j = " + std::to_string(j), j);
    }
    spec.samples_ = std::move(samples);
    return spec;
}

GridFunction PerturbationSpec::generate(const CoefficientCycle& cycle, std::size_t count) const {
    GridFunction q{cycle.h(), std::vector<Complex>(count)};
    switch (kind_) {
    case PerturbationKind::Zero:
        break;
    case PerturbationKind::ConstantEpsilon:
        std::fill(q.values.begin(), q.values.end(), Complex{epsilon_, 0.0});
        break;
    case PerturbationKind::PhaseAligned: {
        const Exponential e(cycle);
        for (std::size_t k = 0; k < count; ++k)
            q.values[k] = std::polar(epsilon_, e.log_at(GridTime{k + 1}).phase);
        break;
    }
    case PerturbationKind::RandomBounded: {
        std::mt19937_64 rng(seed_);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (auto& v : q.values) {
            const double r = epsilon_ * std::sqrt(unit(rng));
            const double theta = 2.0 * std::numbers::pi * unit(rng);
            v = std::polar(r, theta);
        }
        break;
    }
    case PerturbationKind::Explicit:
        if (samples_.size() < count)
            throw Error(ErrorCode::InsufficientSamples,
                        "explicit forcing has " + std::to_string(samples_.size()) +
                            " samples, " + std::to_string(count) + " requested");
        std::copy_n(samples_.values.begin(), count, q.values.begin());
        break;
    }
    return q;
}

Trajectory solve_homogeneous(const CoefficientCycle& cycle, Complex x0, std::size_t steps) {
    return solve_forced(cycle, x0, GridFunction{cycle.h(), std::vector<Complex>(steps)}, steps);
}

Trajectory solve_forced(const CoefficientCycle& cycle, Complex phi0, const GridFunction& q,
                        std::size_t steps) {
    if (q.size() < steps)
        throw Error(ErrorCode::LengthMismatch, "forcing has " + std::to_string(q.size()) +
                                                   " samples, need " + std::to_string(steps));
    const double h = cycle.h();
    const std::size_t n = cycle.period();
    Trajectory phi{h, std::vector<Complex>(steps + 1)};
    phi.values[0] = phi0;
    for (std::size_t j = 0; j < steps; ++j) {
        phi.values[j + 1] = cycle.factor(j % n) * phi.values[j] + h * q[j];
        if (!is_finite(phi.values[j + 1]))
            throw Error(ErrorCode::Overflow, "trajectory left the double range at step " +
                                                 std::to_string(j + 1), j + 1);
    }
    return phi;
}

Trajectory solve_perturbed(const CoefficientCycle& cycle, Complex phi0, const Forcing& f,
                           std::size_t steps) {
    if (!f) throw Error(ErrorCode::CallbackFailure, "perturbation callback is empty");
    const double h = cycle.h();
    const std::size_t n = cycle.period();
    Trajectory phi{h, std::vector<Complex>(steps + 1)};
    phi.values[0] = phi0;
    for (std::size_t j = 0; j < steps; ++j) {
        Complex fx;
        try {
            fx = f(GridTime{j}, phi.values[j]);
        } catch (const std::exception& e) {
            throw Error(ErrorCode::CallbackFailure,
                        "perturbation failed at step " + std::to_string(j) + ": " + e.what(), j);
        }
        if (!is_finite(fx))
            throw Error(ErrorCode::CallbackFailure,
                        "perturbation returned a non-finite value at step " + std::to_string(j), j);
        phi.values[j + 1] = cycle.factor(j % n) * phi.values[j] + h * fx;
        if (!is_finite(phi.values[j + 1]))
            throw Error(ErrorCode::Overflow, "trajectory left the double range at step " +
                                                 std::to_string(j + 1), j + 1);
    }
    return phi;
}

GridFunction residual(const CoefficientCycle& cycle, const Trajectory& phi) {
    if (phi.size() < 2) throw Error(ErrorCode::TooShort, "residual needs at least two samples");
    const double h = cycle.h();
    if (std::abs(phi.h - h) > 1e-12 * h)
        throw Error(ErrorCode::InvalidArgument, "trajectory step differs from the cycle step");
    const std::size_t n = cycle.period();
    GridFunction q{h, std::vector<Complex>(phi.size() - 1)};
    for (std::size_t j = 0; j + 1 < phi.size(); ++j)
        q.values[j] = (phi[j + 1] - phi[j]) / h - cycle[j % n] * phi[j];
    return q;
}

std::vector<LogValue> homogeneous_log_trajectory(const CoefficientCycle& cycle, Complex x0,
                                                 std::size_t steps) {
    const Exponential e(cycle);
    const double log_x0 = std::log(std::abs(x0));
    const double arg_x0 = std::arg(x0);
    std::vector<LogValue> out(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) {
        const LogValue v = e.log_at(GridTime{j});
        out[j] = {v.log_magnitude + log_x0, reduce_phase(v.phase + arg_x0)};
    }
    return out;
}

namespace {

struct SeriesData {
    double rho;
    double max_sum;
    double epsilon;
};

SeriesData series_data(const CoefficientCycle& cycle, const GridFunction& q,
                       double classification_tol) {
    const StabilityReport report = ulam_constant(cycle, classification_tol);
    if (report.stability.tag != StabilityTag::StableExpanding)
        throw Error(ErrorCode::NotExpanding, "limit solution requires rho > 1");
    double eps = 0.0;
    for (const Complex& v : q.values) eps = std::max(eps, std::abs(v));
    return {report.rho, report.sums[report.argmax_residue], eps};
}

double tail_bound(const CoefficientCycle& cycle, const SeriesData& d, std::size_t periods) {
    return cycle.h() * d.epsilon * d.max_sum * std::pow(d.rho, -static_cast<double>(periods)) *
           d.rho / (d.rho - 1.0);
}

LimitSolution sum_periods(const CoefficientCycle& cycle, Complex phi0, const GridFunction& q,
                          std::size_t periods, const SeriesData& d) {
    const std::size_t n = cycle.period();
    const std::size_t terms = periods * n;
    if (q.size() < terms)
        throw Error(ErrorCode::InsufficientSamples,
                    "series needs " + std::to_string(terms) + " forcing samples, got " +
                        std::to_string(q.size()));
    const double h = cycle.h();
    Complex inverse{1.0, 0.0};  // 1 / e_p((k+1)h)
    Complex sum{}, compensation{};
    for (std::size_t k = 0; k < terms; ++k) {
        inverse /= cycle.factor(k % n);
        const Complex term = h * q[k] * inverse - compensation;
        const Complex next = sum + term;
        compensation = (next - sum) - term;
        sum = next;
    }
    return {phi0 + sum, tail_bound(cycle, d, periods), d.epsilon, periods};
}

}  // namespace

LimitSolution limit_solution_truncated(const CoefficientCycle& cycle, Complex phi0,
                                       const GridFunction& q, std::size_t periods,
                                       double classification_tol) {
    const SeriesData d = series_data(cycle, q, classification_tol);
    if (d.epsilon == 0.0) return {phi0, 0.0, 0.0, 0};
    return sum_periods(cycle, phi0, q, periods, d);
}

LimitSolution limit_solution(const CoefficientCycle& cycle, Complex phi0, const GridFunction& q,
                             std::optional<double> tol, double classification_tol) {
    const SeriesData d = series_data(cycle, q, classification_tol);
    if (d.epsilon == 0.0) return {phi0, 0.0, 0.0, 0};
    const double k_n = cycle.h() * d.rho * d.max_sum / (d.rho - 1.0);
    const double target = tol.value_or(1e-9 * k_n * d.epsilon);
    if (!(target > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    const double head = tail_bound(cycle, d, 0);
    std::size_t periods = 0;
    if (head > target)
        periods = static_cast<std::size_t>(std::ceil(std::log(head / target) / std::log(d.rho)));
    while (tail_bound(cycle, d, periods) > target) ++periods;
    return sum_periods(cycle, phi0, q, periods, d);
}

std::vector<Complex> tracking_deviation(const CoefficientCycle& cycle, const GridFunction& q) {
    const std::size_t n = cycle.period();
    const double h = cycle.h();
    std::vector<Complex> out(q.size() + 1);
    Complex tail{};
    for (std::size_t j = q.size(); j-- > 0;) {
        tail = (h * q[j] + tail) / cycle.factor(j % n);
        out[j] = -tail;
    }
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "step,t,re,im,abs\n";
    char line[160];
    for (std::size_t j = 0; j < traj.size(); ++j) {
        const Complex v = traj[j];
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g\n", j,
                      static_cast<double>(j) * traj.h, v.real(), v.imag(), std::abs(v));
        out << line;
    }
}

GridFunction read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::InvalidArgument, "empty trajectory file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "step,t,re,im,abs")
        throw Error(ErrorCode::InvalidArgument, "trajectory header must be step,t,re,im,abs");
    GridFunction f;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> cols;
        while (std::getline(row, cell, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidArgument, "bad number in trajectory row: " + line);
            }
            if (!std::isfinite(v))
                throw Error(ErrorCode::NonFinite, "non-finite value in trajectory row: " + line);
            cols.push_back(v);
        }
        if (cols.size() != 5)
            throw Error(ErrorCode::InvalidArgument, "trajectory row needs 5 columns: " + line);
        if (cols[0] != static_cast<double>(f.values.size()))
            throw Error(ErrorCode::InvalidArgument, "trajectory steps must be 0, 1, 2, ...");
        times.push_back(cols[1]);
        f.values.emplace_back(cols[2], cols[3]);
    }
    if (f.values.empty()) throw Error(ErrorCode::TooShort, "trajectory file has no rows");
    f.h = times.size() > 1 ? times[1] - times[0] : 1.0;
    return f;
}

}  // namespace ulam
