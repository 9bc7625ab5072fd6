#include <doctest.h>

#include "ulam/core.hpp"

#include <cmath>
#include <limits>

using namespace ulam;

namespace {

ErrorCode code_of(double h, std::vector<Complex> p) {
    try {
        (void)CoefficientCycle::validate(h, std::move(p));
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a validation error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validate rejects the excluded coefficient") {
    try {
        (void)CoefficientCycle::validate(1.0, {{-1.0, 0.0}});
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularCoefficient);
        REQUIRE(e.index().has_value());
        CHECK(*e.index() == 0);
    }
    try {
        (void)CoefficientCycle::validate(0.5, {{1.0, 0.0}, {-2.0, 0.0}});
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularCoefficient);
        CHECK(*e.index() == 1);
    }
}

TEST_CASE("validate rejects bad steps, empty cycles and non-finite values") {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(code_of(0.0, {{1.0, 0.0}}) == ErrorCode::NonPositiveStep);
    CHECK(code_of(-1.0, {{1.0, 0.0}}) == ErrorCode::NonPositiveStep);
    CHECK(code_of(1.0, {}) == ErrorCode::EmptyCycle);
    CHECK(code_of(1.0, {{nan, 0.0}}) == ErrorCode::NonFinite);
    CHECK(code_of(1.0, {{0.0, inf}}) == ErrorCode::NonFinite);
    CHECK(code_of(inf, {{1.0, 0.0}}) == ErrorCode::NonFinite);
}

TEST_CASE("minimality of the declared period") {
    const auto a = CoefficientCycle::validate(1.0, {{1.0, 0.0}, {0.0, 0.0}});
    CHECK(a.period() == 2);
    CHECK(a.is_minimal());
    const auto b = CoefficientCycle::validate(1.0, {{1.0, 0.0}, {1.0, 0.0}});
    CHECK(b.period() == 2);
    CHECK_FALSE(b.is_minimal());
    CHECK(minimal_period(b) == 1);
    const auto c = CoefficientCycle::validate(1.0, {{1, 0}, {0, 0}, {1, 0}, {0, 0}});
    CHECK(minimal_period(c) == 2);
    CHECK(c.reduced().period() == 2);
    const auto d = CoefficientCycle::validate(1.0, {{1, 0}, {0, 0}, {1, 0}});
    CHECK(minimal_period(d) == 3);
}

TEST_CASE("coefficient lookup is periodic") {
    const auto c = CoefficientCycle::validate(1.0, {{1.0, 0.0}, {0.0, 0.0}});
    CHECK(coefficient_at(c, GridTime{0}) == Complex{1.0, 0.0});
    CHECK(coefficient_at(c, GridTime{3}) == Complex{0.0, 0.0});
    CHECK(coefficient_at(c, GridTime{4}) == Complex{1.0, 0.0});
    CHECK(GridTime{3}.at(0.5) == 1.5);
}

TEST_CASE("repetition and rotation") {
    const auto c = CoefficientCycle::validate(0.5, {{1, 2}, {3, 0}, {-1, 1}});
    const auto r = c.repeated(3);
    CHECK(r.period() == 9);
    CHECK(r.minimal_period() == 3);
    for (std::uint64_t t = 0; t < 30; ++t) CHECK(r.coefficient_at({t}) == c.coefficient_at({t}));
    const auto rot = c.rotated(1);
    CHECK(rot[0] == c[1]);
    CHECK(rot[2] == c[0]);
    CHECK(c.rotated(3)[0] == c[0]);
}

TEST_CASE("Hilger circle membership") {
    CHECK(on_hilger_circle({-1.0, 1.0}, 1.0, 1e-12));
    CHECK_FALSE(on_hilger_circle({1.0, 0.0}, 1.0, 1e-12));
    CHECK(on_hilger_circle({-2.0, 0.0}, 1.0, 1e-12));
    CHECK(on_hilger_circle({0.0, 0.0}, 3.0, 0.0));
    const double h = 0.25;
    const Complex p = (std::polar(1.0, 1.1) - 1.0) / h;
    CHECK(on_hilger_circle(p, h, 1e-12));
    CHECK_THROWS_AS(on_hilger_circle(p, 0.0, 1e-12), Error);
}

TEST_CASE("near-singular factors are admitted but flagged") {
    const auto c = CoefficientCycle::validate(1.0, {{-1.0 + 1e-10, 0.0}, {1.0, 0.0}});
    CHECK(c.has_near_singular_factor());
    const auto d = CoefficientCycle::validate(1.0, {{1.0, 0.0}});
    CHECK_FALSE(d.has_near_singular_factor());
}
