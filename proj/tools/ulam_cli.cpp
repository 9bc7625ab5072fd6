// ulam: command-line front end for the Ulam stability library.
//
//   ulam classify CONFIG
//   ulam simulate CONFIG --q zero|const|phase|random|file=PATH [--phi0 re,im] [--steps N] [--out PATH]
//   ulam witness  CONFIG --mode instability|sharpness [--periods N] [--out PATH]
//   ulam verify   CONFIG --suite sharpness|contracting|uniqueness [--trials N]
//   ulam bound    CONFIG --L x --delta d [--alpha a1,a2,...] [--trials N]
//
// Exit codes: 0 success, 1 usage or input error, 2 domain refusal, 3 suite failure.

#include "ulam/boundedness.hpp"
#include "ulam/io.hpp"
#include "ulam/simulator.hpp"
#include "ulam/stability.hpp"
#include "ulam/suites.hpp"
#include "ulam/witness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ulam;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRefused = 2;
constexpr int kExitSuiteFailed = 3;

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::BoundaryMultiplier:
    case ErrorCode::NotOnBoundary:
    case ErrorCode::NotExpanding:
    case ErrorCode::NotContracting:
    case ErrorCode::UnsupportedPeriod:
        return kExitRefused;
    case ErrorCode::CertificateViolated:
        return kExitSuiteFailed;
    default:
        return kExitInput;
    }
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

void write_csv_file(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    write_trajectory_csv(out, traj);
}

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {re, 0.0};
        }
        const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        const double re = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(text);
        const double im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(text);
        if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument(text);
        return {re, im};
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "expected re,im but got '" + text + "'");
    }
}

int cmd_classify(const ProblemConfig& config) {
    const CoefficientCycle cycle = config.cycle();
    const StabilityReport report = ulam_constant(cycle, config.classification_tol);
    print(to_json(report, cycle));
    return report.stability.tag == StabilityTag::NotUlamStable ? kExitRefused : kExitOk;
}

struct SimulateArgs {
    std::string q = "zero";
    std::string phi0 = "0,0";
    std::optional<std::size_t> steps;
    std::string out;
    std::string residual_out;
};

int cmd_simulate(const ProblemConfig& config, const SimulateArgs& args) {
    const CoefficientCycle cycle = config.cycle();
    const std::size_t n = cycle.period();
    const std::size_t steps = args.steps.value_or(config.horizon_periods * n);
    const Complex phi0 = parse_complex(args.phi0);
    const StabilityReport report = ulam_constant(cycle, config.classification_tol);
    const bool expanding = report.stability.tag == StabilityTag::StableExpanding;

    // Extra forcing past the horizon lets the tracking error be evaluated
    // from the series tail instead of a cancelling difference.
    std::size_t tail = 0;
    if (expanding)
        tail = (static_cast<std::size_t>(std::ceil(std::log(1e12) / std::log(report.rho))) + 1) * n;

    std::optional<PerturbationSpec> spec;
    if (args.q == "zero") spec = PerturbationSpec::zero(config.epsilon);
    else if (args.q == "const") spec = PerturbationSpec::constant(config.epsilon);
    else if (args.q == "phase") spec = PerturbationSpec::phase_aligned(config.epsilon);
    else if (args.q == "random") spec = PerturbationSpec::random_bounded(config.epsilon, config.seed);
    else if (args.q.rfind("file=", 0) == 0) {
        const std::string path = args.q.substr(5);
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read forcing file '" + path + "'");
        spec = PerturbationSpec::explicit_samples(config.epsilon, read_trajectory_csv(in));
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown --q source '" + args.q + "'");
    }

    GridFunction q;
    bool have_tail = expanding;
    try {
        q = spec->generate(cycle, steps + tail);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientSamples) throw;
        q = spec->generate(cycle, steps);
        have_tail = false;
    }

    const Trajectory phi = solve_forced(cycle, phi0, q, steps);
    const GridFunction res = residual(cycle, phi);
    double max_residual = 0.0, roundtrip = 0.0;
    for (std::size_t j = 0; j < res.size(); ++j) {
        max_residual = std::max(max_residual, std::abs(res[j]));
        roundtrip = std::max(roundtrip, std::abs(res[j] - q[j]));
    }

    Json summary;
    summary["q"] = args.q;
    summary["steps"] = steps;
    summary["class"] = to_string(report.stability.tag);
    summary["rho"] = report.rho;
    summary["K"] = report.K ? Json(*report.K) : Json(nullptr);
    summary["epsilon"] = config.epsilon;
    summary["max_residual"] = max_residual;
    summary["final_magnitude"] = std::abs(phi.values.back());
    summary["max_roundtrip_error"] = roundtrip;
    if (have_tail) {
        const std::vector<Complex> dev = tracking_deviation(cycle, q);
        double sup = 0.0;
        for (std::size_t j = 0; j <= steps; ++j) sup = std::max(sup, std::abs(dev[j]));
        const LimitSolution limit = limit_solution_truncated(
            cycle, phi0, q, q.size() / n, config.classification_tol);
        summary["x0"] = Json::array({limit.x0.real(), limit.x0.imag()});
        summary["sup_tracking_error"] = sup;
        summary["K_epsilon"] = *report.K * config.epsilon;
    } else {
        summary["x0"] = nullptr;
        summary["sup_tracking_error"] = nullptr;
        summary["K_epsilon"] = report.K ? Json(*report.K * config.epsilon) : Json(nullptr);
    }
    if (!args.out.empty()) {
        write_csv_file(args.out, phi);
        summary["trajectory"] = args.out;
    }
    if (!args.residual_out.empty()) {
        write_csv_file(args.residual_out, res);
        summary["residual"] = args.residual_out;
    }
    print(summary);
    return kExitOk;
}

int cmd_witness(const ProblemConfig& config, const std::string& mode,
                std::optional<std::size_t> periods_arg, const std::string& out) {
    const CoefficientCycle cycle = config.cycle();
    const std::size_t periods = periods_arg.value_or(config.horizon_periods);
    WitnessReport w;
    if (mode == "instability")
        w = instability_witness(cycle, config.epsilon, periods * cycle.period(),
                                config.classification_tol);
    else if (mode == "sharpness")
        w = sharpness_witness(cycle, config.epsilon, periods, config.classification_tol);
    else
        throw Error(ErrorCode::InvalidArgument, "unknown --mode '" + mode + "'");

    const StabilityReport report = ulam_constant(cycle, config.classification_tol);
    Json j = to_json(report, cycle);
    const Json wj = to_json(w);
    for (const auto& [key, value] : wj.items()) j[key] = value;
    if (!out.empty()) {
        const std::string traj = out + ".trajectory.csv";
        write_csv_file(traj, w.phi);
        j["trajectory"] = traj;
        write_text_file(out, j.dump(2) + "\n");
    }
    print(j);
    return kExitOk;
}

int cmd_verify(const ProblemConfig& config, const std::string& suite, std::size_t trials) {
    SuiteResult result;
    if (suite == "sharpness") result = sharpness_suite(config, trials);
    else if (suite == "contracting") result = contracting_suite(config, trials);
    else if (suite == "uniqueness") result = uniqueness_suite(config, trials);
    else throw Error(ErrorCode::InvalidArgument, "unknown --suite '" + suite + "'");
    print(result.to_json());
    return result.passed() ? kExitOk : kExitSuiteFailed;
}

int cmd_bound(const ProblemConfig& config, double L, double delta,
              const std::vector<double>& alphas, std::size_t trials) {
    const CoefficientCycle cycle = config.cycle();
    Json j;
    j["B"] = ultimate_bound(cycle, L, delta, config.classification_tol);
    Json certs = Json::array();
    for (double alpha : alphas)
        certs.push_back(to_json(certify(cycle, L, delta, alpha, config.classification_tol)));
    j["certificates"] = certs;

    const double h = cycle.h();
    const std::vector<std::pair<std::string, Forcing>> families = {
        {"saturating", [L](GridTime, Complex phi) { return L * phi / (1.0 + std::abs(phi)); }},
        {"constant", [L](GridTime, Complex) { return Complex{L, 0.0}; }},
        {"rotating", [L, h](GridTime t, Complex) { return std::polar(L, 0.7 * t.at(h)); }},
    };
    Json verification;
    for (const auto& [name, f] : families)
        verification[name] = to_json(verify_boundedness(cycle, f, L, delta, alphas, trials,
                                                         config.seed, config.classification_tol));
    j["verification"] = verification;
    print(j);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ulam stability of first-order h-difference equations with periodic coefficients"};
    app.require_subcommand(1);
    std::string config_path;

    auto* classify = app.add_subcommand("classify", "Classify the cycle and compute its Ulam constant");
    classify->add_option("config", config_path, "Config file")->required();

    SimulateArgs sim;
    std::size_t sim_steps = 0;
    auto* simulate = app.add_subcommand("simulate", "Simulate the forced equation");
    simulate->add_option("config", config_path, "Config file")->required();
    simulate->add_option("--q", sim.q, "Forcing: zero, const, phase, random or file=PATH");
    simulate->add_option("--phi0", sim.phi0, "Initial value as re,im");
    auto* steps_opt = simulate->add_option("--steps", sim_steps, "Number of steps");
    simulate->add_option("--out", sim.out, "Trajectory CSV output");
    simulate->add_option("--residual-out", sim.residual_out, "Residual CSV output");

    std::string mode;
    std::size_t witness_periods = 0;
    std::string witness_out;
    auto* witness = app.add_subcommand("witness", "Build an instability or sharpness witness");
    witness->add_option("config", config_path, "Config file")->required();
    witness->add_option("--mode", mode, "instability or sharpness")->required();
    auto* periods_opt = witness->add_option("--periods", witness_periods, "Number of periods");
    witness->add_option("--out", witness_out, "Report output (JSON)");

    std::string suite;
    std::size_t verify_trials = 20;
    auto* verify = app.add_subcommand("verify", "Run a property suite");
    verify->add_option("config", config_path, "Config file")->required();
    verify->add_option("--suite", suite, "sharpness, contracting or uniqueness")->required();
    verify->add_option("--trials", verify_trials, "Number of trials");

    double L = 0.0, delta = 0.0;
    std::vector<double> alphas = {1.0, 10.0, 100.0};
    std::size_t bound_trials = 200;
    auto* bound = app.add_subcommand("bound", "Ultimate-boundedness certificate and check");
    bound->add_option("config", config_path, "Config file")->required();
    bound->add_option("--L", L, "Bound on |f|")->required();
    bound->add_option("--delta", delta, "Margin added to L K_0")->required();
    bound->add_option("--alpha", alphas, "Initial radii")->delimiter(',');
    bound->add_option("--trials", bound_trials, "Trials per alpha");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        const ProblemConfig config = load_config(config_path);
        if (*classify) return cmd_classify(config);
        if (*simulate) {
            if (steps_opt->count() > 0) sim.steps = sim_steps;
            return cmd_simulate(config, sim);
        }
        if (*witness) {
            std::optional<std::size_t> periods;
            if (periods_opt->count() > 0) periods = witness_periods;
            return cmd_witness(config, mode, periods, witness_out);
        }
        if (*verify) return cmd_verify(config, suite, verify_trials);
        if (*bound) return cmd_bound(config, L, delta, alphas, bound_trials);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
