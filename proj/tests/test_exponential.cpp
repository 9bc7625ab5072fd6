#include <doctest.h>

#include "oracles.hpp"
#include "ulam/exponential.hpp"
#include "ulam/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace ulam;

TEST_CASE("worked values of e_p") {
    const auto a = CoefficientCycle::validate(1.0, {{1.0, 0.0}, {0.0, 0.0}});
    CHECK(ep(a, GridTime{0}) == Complex{1.0, 0.0});
    CHECK(ep(a, GridTime{3}) == Complex{4.0, 0.0});
    const auto b = CoefficientCycle::validate(0.5, {{2.0, 0.0}, {-1.0, 0.0}});
    CHECK(std::abs(ep(b, GridTime{2}) - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("log form") {
    const auto a = CoefficientCycle::validate(1.0, {{1.0, 0.0}, {0.0, 0.0}});
    const LogValue zero = log_ep(a, GridTime{0});
    CHECK(zero.log_magnitude == 0.0);
    CHECK(zero.phase == 0.0);
    const LogValue far = log_ep(a, GridTime{200});
    CHECK(far.log_magnitude == doctest::Approx(100.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(far.phase == 0.0);

    const auto neg = CoefficientCycle::validate(1.0, {{-2.0, 0.0}});
    const LogValue v = log_ep(neg, GridTime{3});
    CHECK(std::abs(v.log_magnitude) < 1e-15);
    CHECK(v.phase == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(std::abs(ep(neg, GridTime{3}) - Complex{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("multiplier") {
    CHECK(multiplier(CoefficientCycle::validate(1.0, {{1, 0}, {0, 0}})).rho == 2.0);
    CHECK(multiplier(CoefficientCycle::validate(0.5, {{2, 0}, {-1, 0}})).rho == 1.0);
    CHECK(multiplier(CoefficientCycle::validate(1.0, {{-1, 1}})).rho == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reduce_phase lands in (-pi, pi]") {
    const double pi = std::numbers::pi;
    CHECK(reduce_phase(pi) == doctest::Approx(pi));
    CHECK(reduce_phase(-pi) == doctest::Approx(pi));
    CHECK(reduce_phase(3 * pi) == doctest::Approx(pi));
    CHECK(reduce_phase(0.5) == doctest::Approx(0.5));
    CHECK(reduce_phase(2 * pi + 0.5) == doctest::Approx(0.5));
}

TEST_CASE("recurrence and periodic factorisation on random cycles") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rho(0.85, 1.15);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const auto cycle = random_cycle(rng, n, 0.5 + 0.1 * trial, rho(rng));
        const Exponential e(cycle);
        const Complex pv = e.multiplier().period_value;
        Complex prev = e.at({0});
        for (std::uint64_t t = 0; t < 2000; ++t) {
            const Complex next = e.at({t + 1});
            const Complex stepped = cycle.factor(t % n) * prev;
            CHECK(std::abs(next - stepped) <= 1e-12 * std::abs(next) * (1 + t / 50.0));
            const Complex shifted = e.at({t + n});
            CHECK(std::abs(shifted - pv * e.at({t})) <= 1e-10 * std::abs(shifted));
            CHECK(std::log(std::abs(next)) == doctest::Approx(e.log_magnitude({t + 1})).epsilon(1e-12).scale(1.0));
            prev = next;
        }
    }
}

TEST_CASE("matches the term-by-term product") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const auto cycle = random_cycle(rng, n, 1.0, 1.3);
        const std::vector<Complex> p(cycle.coefficients().begin(), cycle.coefficients().end());
        for (std::size_t j : {0u, 1u, 7u, 50u, 311u}) {
            const Complex want = oracle::narrow(oracle::ep(cycle.h(), p, j));
            CHECK(std::abs(ep(cycle, {j}) - want) <= 1e-11 * std::abs(want));
        }
    }
}

TEST_CASE("overflow is reported, log form keeps going") {
    const auto big = CoefficientCycle::validate(1.0, {{1.0, 0.0}});
    CHECK_NOTHROW(ep(big, {1000}));
    try {
        (void)ep(big, {2000});
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Overflow);
    }
    CHECK(log_ep(big, {2000}).log_magnitude == doctest::Approx(2000 * std::log(2.0)));
    const auto small = CoefficientCycle::validate(1.0, {{-0.5, 0.0}});
    CHECK_THROWS_AS(ep(small, {2000}), Error);
}
