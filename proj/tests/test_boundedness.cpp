#include <doctest.h>

#include "ulam/boundedness.hpp"

#include <cmath>

using namespace ulam;

namespace {

const CoefficientCycle& example() {
    static const auto c = CoefficientCycle::validate(1.0, {{-0.5, 0}, {-0.25, 0}});
    return c;
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

TEST_CASE("ultimate bound") {
    CHECK(ultimate_bound(example(), 1.0, 0.1) == doctest::Approx(2.9).epsilon(1e-14));
    CHECK(ultimate_bound(example(), 1.0, 0.6) - ultimate_bound(example(), 1.0, 0.1) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ultimate_bound(example(), 2.0, 0.1) == doctest::Approx(5.7).epsilon(1e-14));
}

TEST_CASE("settle time") {
    // h (2 ln(delta / ((L K0 + alpha) maxfac)) / ln(a0 a1) + 1), K0 = 2.8, maxfac = 1
    const double want = 2.0 * std::log(0.1 / 3.8) / std::log(0.375) + 1.0;
    CHECK(settle_time(example(), 1.0, 0.1, 1.0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(settle_time(example(), 1.0, 0.1, 1.0) == doctest::Approx(8.42).epsilon(1e-3));
    CHECK(settle_time(example(), 1.0, 10.0, 1.0) == 0.0);
    double prev = 0.0;
    for (double alpha : {0.5, 1.0, 10.0, 100.0, 1e4}) {
        const double t = settle_time(example(), 1.0, 0.1, alpha);
        CHECK(t > prev);
        prev = t;
    }
    const auto expanding_p0 = CoefficientCycle::validate(1.0, {{1.0, 0}, {-0.9, 0}});
    const auto cert = certify(expanding_p0, 1.0, 0.1, 1.0);
    CHECK(cert.maxfac == doctest::Approx(2.0));
    CHECK(cert.K0 == doctest::Approx(3.0 * 1.0 / 0.8));
}

TEST_CASE("domain refusals") {
    const auto expanding = CoefficientCycle::validate(1.0, {{1, 0}, {0, 0}});
    CHECK(code_of([&] { (void)ultimate_bound(expanding, 1, 0.1); }) == ErrorCode::NotContracting);
    const auto three = CoefficientCycle::validate(1.0, {{-0.5, 0}, {-0.5, 0}, {-0.5, 0}});
    CHECK(code_of([&] { (void)ultimate_bound(three, 1, 0.1); }) == ErrorCode::UnsupportedPeriod);
    CHECK(code_of([&] { (void)ultimate_bound(example(), 0, 0.1); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { (void)settle_time(example(), 1, 0.1, -1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("verification with bounded forcings") {
    const double L = 1.0;
    const std::vector<double> alphas = {1.0, 10.0, 100.0};
    const auto none = verify_boundedness(example(), [](GridTime, Complex) { return Complex{}; }, L, 0.1,
                                         alphas, 50, 1);
    for (const auto& row : none.rows) CHECK(row.margin > 0.9 * row.B);

    const auto sat = verify_boundedness(
        example(), [L](GridTime, Complex phi) { return L * phi / (1.0 + std::abs(phi)); }, L, 0.1,
        alphas, 50, 2);
    REQUIRE(sat.rows.size() == 3);
    for (const auto& row : sat.rows) {
        CHECK(row.max_observed < row.B);
        CHECK(row.trials == 50);
    }
    const auto cst = verify_boundedness(example(), [L](GridTime, Complex) { return Complex{L, 0}; }, L,
                                        0.1, alphas, 50, 3);
    for (const auto& row : cst.rows) CHECK(row.max_observed < row.B);

    CHECK(code_of([&] {
              (void)verify_boundedness(example(), [](GridTime, Complex) { return Complex{2, 0}; }, L,
                                       0.1, alphas, 5, 4);
          }) == ErrorCode::PerturbationBoundViolated);
}

TEST_CASE("settle time monotonicity") {
    for (double alpha : {0.5, 5.0, 50.0}) {
        double prev = 1e300;
        for (double delta : {0.01, 0.1, 1.0, 5.0}) {
            const double t = settle_time(example(), 1.0, delta, alpha);
            CHECK(t <= prev);
            prev = t;
        }
        prev = -1.0;
        for (double L : {0.1, 1.0, 10.0}) {
            const double t = settle_time(example(), L, 0.1, alpha);
            CHECK(t >= prev);
            prev = t;
        }
    }
}

TEST_CASE("forcing independent of the state settles below L K0 + delta / 2") {
    const double L = 1.5, delta = 0.2;
    const double K0 = certify(example(), L, delta, 1.0).K0;
    for (const Forcing& f : {Forcing([L](GridTime, Complex) { return Complex{L, 0}; }),
                             Forcing([L](GridTime t, Complex) { return std::polar(L, 0.3 * t.step); })}) {
        const auto phi = solve_perturbed(example(), {50.0, -20.0}, f, 400);
        double tail = 0.0;
        for (std::size_t j = 300; j <= 400; ++j) tail = std::max(tail, std::abs(phi[j]));
        CHECK(tail <= L * K0 + delta / 2);
    }
}
