#include <doctest.h>

#include "oracles.hpp"
#include "ulam/sampling.hpp"
#include "ulam/witness.hpp"

#include <cmath>
#include <random>

using namespace ulam;

namespace {

CoefficientCycle real_cycle(double h, std::initializer_list<double> p) {
    std::vector<Complex> c;
    for (double x : p) c.emplace_back(x, 0.0);
    return CoefficientCycle::validate(h, c);
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("instability witness on factors 2 and -1/2") {
    const auto c = real_cycle(1.0, {1, -1.5});
    const double eps = 0.3;
    const auto w = instability_witness(c, eps, 400);
    CHECK(w.mode == WitnessMode::Instability);
    CHECK(w.ell == doctest::Approx(0.5));
    CHECK_FALSE(w.target.has_value());
    REQUIRE(w.residue_profile.size() == 2);
    CHECK(w.residue_profile[0] == doctest::Approx(eps));
    CHECK(w.residue_profile[1] == doctest::Approx(eps / 2));
    const auto r = residual(c, w.phi);
    for (std::size_t j = 0; j < r.size(); ++j)
        CHECK(std::abs(r[j]) == doctest::Approx(j % 2 == 0 ? eps : eps / 2).epsilon(1e-10));
    CHECK(w.max_residual == doctest::Approx(eps).epsilon(1e-10));
    for (const GrowthRow& g : w.growth) CHECK(g.min_sup >= g.lower_bound);
    for (std::size_t i = 1; i < w.growth.size(); ++i) CHECK(w.growth[i].min_sup >= w.growth[i - 1].min_sup);
}

TEST_CASE("instability witness grows past every fixed multiple of eps") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 6; ++trial) {
        const auto c = random_boundary_cycle(rng, 1 + trial % 4, 0.5, trial % 2 == 0);
        const auto w = instability_witness(c, 1.0, 4000);
        CHECK(w.max_residual <= 1.0 + 1e-9);
        CHECK(w.probes.size() >= 2);
        CHECK(w.achieved_sup > 100.0);
    }
}

TEST_CASE("instability witness refuses stable cycles") {
    CHECK(code_of([] { (void)instability_witness(real_cycle(1, {1}), 1, 10); }) == ErrorCode::NotOnBoundary);
}

TEST_CASE("sharpness profile and target") {
    const auto c = real_cycle(1.0, {1, 0, 0});
    const auto prof = tracking_error_profile(c, 1.0);
    REQUIRE(prof.size() == 3);
    CHECK(prof[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(prof[1] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(prof[2] == doctest::Approx(4.0).epsilon(1e-14));
    const auto twice = tracking_error_profile(c, 2.0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(twice[k] == doctest::Approx(2 * prof[k]));
    CHECK(tracking_error_profile(real_cycle(1.0, {1}), 1.0)[0] == doctest::Approx(1.0));

    const auto w = sharpness_witness(c, 1.0, 40);
    REQUIRE(w.target);
    CHECK(*w.target == doctest::Approx(5.0));
    CHECK(w.achieved_sup / *w.target >= 1.0 - std::pow(2.0, -40) - 1e-15);
    CHECK(w.achieved_sup <= *w.target * (1 + 1e-12));
    CHECK(*std::max_element(w.residue_profile.begin(), w.residue_profile.end()) ==
          doctest::Approx(*w.target).epsilon(1e-12));
}

TEST_CASE("on a positive real cycle the aligned forcing is the constant one") {
    const auto c = real_cycle(1.0, {1, 0});
    const auto w = sharpness_witness(c, 0.5, 30);
    for (const Complex& q : w.q.values) CHECK(std::abs(q - Complex{0.5, 0}) < 1e-15);
    CHECK(w.achieved_sup / *w.target >= 1 - std::pow(2.0, -30) - 1e-15);
}

TEST_CASE("sharpness residual reproduces the forcing") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = random_cycle(rng, 1 + trial % 5, 1.0, 1.5 + 0.2 * trial);
        const auto w = sharpness_witness(c, 1.0, 20);
        const auto r = residual(c, w.phi);
        for (std::size_t j = 0; j < r.size(); ++j) {
            CHECK(std::abs(w.q[j]) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(r[j] - w.q[j]) <= 1e-10 * std::max(1.0, std::abs(w.phi[j + 1])));
        }
    }
}

TEST_CASE("complex cycle with factors 1 + i and 2") {
    const auto c = CoefficientCycle::validate(1.0, {{0, 1}, {1, 0}});
    const double K = *ulam_constant(c).K;
    const auto sums = oracle::sums(1.0, {{0, 1}, {1, 0}});
    const double r = 2 * std::sqrt(2.0);
    CHECK(K == doctest::Approx(static_cast<double>(r * std::max(sums[0], sums[1]) / (r - 1))).epsilon(1e-14));
    const auto w = sharpness_witness(c, 1.0, 40);
    CHECK(std::abs(w.achieved_sup - K) / K <= 1e-6);
    const double oracle_sup = brute_force_sup(c, 1.0, 40, 64, 0);
    CHECK(std::abs(oracle_sup - K) / K <= 1e-6);
    CHECK(oracle_sup <= K * (1 + 1e-9));
    CHECK(w.achieved_sup <= oracle_sup * (1 + 1e-12));
}

TEST_CASE("single phase sample reproduces the witness on a positive real cycle") {
    const auto c = real_cycle(1.0, {1, 0, 0.5});
    const auto w = sharpness_witness(c, 1.0, 25);
    const double b = brute_force_sup(c, 1.0, 25, 1, 0);
    CHECK(b == doctest::Approx(w.achieved_sup).epsilon(1e-12));
}

TEST_CASE("brute force is deterministic per seed") {
    const auto c = CoefficientCycle::validate(0.5, {{0.4, 1.3}, {2, -1}, {0.1, 0}});
    CHECK(brute_force_sup(c, 1.0, 10, 16, 3) == brute_force_sup(c, 1.0, 10, 16, 3));
}

TEST_CASE("sharpness refuses non-expanding cycles") {
    CHECK(code_of([] { (void)sharpness_witness(real_cycle(1, {-0.5}), 1, 10); }) == ErrorCode::NotExpanding);
    CHECK(code_of([] { (void)tracking_error_profile(real_cycle(1, {-0.5}), 1); }) == ErrorCode::NotExpanding);
    CHECK(code_of([] { (void)brute_force_sup(real_cycle(1, {-0.5}), 1, 10); }) == ErrorCode::NotExpanding);
}
