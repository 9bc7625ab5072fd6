#include "ulam/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ulam {

namespace {

double finite_number(const Json& v, const std::string& key) {
    if (!v.is_number())
        throw Error(ErrorCode::InvalidArgument, "config key '" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw Error(ErrorCode::NonFinite, "config key '" + key + "' is not finite");
    return x;
}

std::uint64_t nonnegative_integer(const Json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw Error(ErrorCode::InvalidArgument,
                "config key '" + key + "' must be a non-negative integer");
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

ProblemConfig parse_config(const Json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
    static const std::set<std::string> known = {"h", "coefficients", "epsilon",
                                                "horizon_periods", "classification_tol", "seed"};
    for (const auto& [key, value] : doc.items())
        if (!known.contains(key))
            throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
    if (!doc.contains("h")) throw Error(ErrorCode::InvalidArgument, "config needs 'h'");
    if (!doc.contains("coefficients"))
        throw Error(ErrorCode::InvalidArgument, "config needs 'coefficients'");

    ProblemConfig c;
    c.h = finite_number(doc["h"], "h");
    const Json& coeffs = doc["coefficients"];
    if (!coeffs.is_array())
        throw Error(ErrorCode::InvalidArgument, "'coefficients' must be an array of [re, im]");
    for (const Json& pair : coeffs) {
        if (!pair.is_array() || pair.size() != 2)
            throw Error(ErrorCode::InvalidArgument, "each coefficient must be [re, im]");
        c.coefficients.emplace_back(finite_number(pair[0], "coefficients"),
                                    finite_number(pair[1], "coefficients"));
    }
    if (doc.contains("epsilon")) {
        c.epsilon = finite_number(doc["epsilon"], "epsilon");
        if (c.epsilon <= 0.0) throw Error(ErrorCode::InvalidArgument, "'epsilon' must be positive");
    }
    if (doc.contains("horizon_periods")) {
        c.horizon_periods = nonnegative_integer(doc["horizon_periods"], "horizon_periods");
        if (c.horizon_periods == 0)
            throw Error(ErrorCode::InvalidArgument, "'horizon_periods' must be positive");
    }
    if (doc.contains("classification_tol")) {
        c.classification_tol = finite_number(doc["classification_tol"], "classification_tol");
        if (c.classification_tol < 0.0)
            throw Error(ErrorCode::InvalidArgument, "'classification_tol' must be >= 0");
    }
    if (doc.contains("seed")) c.seed = nonnegative_integer(doc["seed"], "seed");
    (void)c.cycle();  // validation errors surface at load time
    return c;
}

ProblemConfig parse_config_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

Json to_json(const StabilityReport& report, const CoefficientCycle& cycle) {
    Json j;
    j["class"] = to_string(report.stability.tag);
    j["rho"] = report.rho;
    j["sums"] = report.sums;
    j["K"] = report.K ? Json(*report.K) : Json(nullptr);
    j["argmax_residue"] = report.argmax_residue;
    j["is_minimum_constant"] = report.is_minimum_constant;
    j["minimality_warning"] = report.minimality_warning;
    j["minimal_period"] = cycle.minimal_period();
    j["near_singular_warning"] = report.near_singular_warning;
    j["classification_tol"] = report.stability.classification_tol;
    Json flags = Json::array();
    for (const Complex& p : cycle.coefficients())
        flags.push_back(on_hilger_circle(p, cycle.h(), report.stability.classification_tol));
    j["hilger_flags"] = flags;
    return j;
}

Json to_json(const WitnessReport& w) {
    Json j;
    j["mode"] = to_string(w.mode);
    j["epsilon"] = w.epsilon;
    j["periods"] = w.periods;
    j["steps"] = w.phi.size() == 0 ? 0 : w.phi.size() - 1;
    j["achieved_sup"] = w.achieved_sup;
    j["target"] = w.target ? Json(*w.target) : Json(nullptr);
    j["remainder"] = w.remainder;
    j["residue_profile"] = w.residue_profile;
    j["max_residual"] = w.max_residual;
    if (w.mode == WitnessMode::Sharpness) {
        j["x0"] = complex_pair(w.x0);
    } else {
        j["ell"] = w.ell;
        Json probes = Json::array();
        for (const Complex& c : w.probes) probes.push_back(complex_pair(c));
        j["probes"] = probes;
        Json growth = Json::array();
        for (const GrowthRow& g : w.growth)
            growth.push_back({{"steps", g.steps}, {"min_sup", g.min_sup}, {"lower_bound", g.lower_bound}});
        j["growth"] = growth;
    }
    return j;
}

Json to_json(const BoundednessCertificate& c) {
    return Json{{"L", c.L},         {"delta", c.delta}, {"K0", c.K0},
                {"B", c.B},         {"alpha", c.alpha}, {"T_alpha", c.T_alpha},
                {"maxfac", c.maxfac}};
}

Json to_json(const BoundednessReport& r) {
    Json rows = Json::array();
    for (const BoundednessRow& row : r.rows)
        rows.push_back({{"alpha", row.alpha},
                        {"T_alpha", row.T_alpha},
                        {"B", row.B},
                        {"max_observed", row.max_observed},
                        {"margin", row.margin},
                        {"trials", row.trials},
                        {"horizon_steps", row.horizon_steps}});
    return Json{{"L", r.L}, {"delta", r.delta}, {"K0", r.K0}, {"B", r.B}, {"rows", rows}};
}

}  // namespace ulam
