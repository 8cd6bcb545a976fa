#include "catch_amalgamated.hpp"

#include "tailassoc/error.hpp"
#include "tailassoc/quadrature.hpp"

#include <cmath>
#include <vector>

using namespace tailassoc;
using Catch::Matchers::WithinAbs;

TEST_CASE("smooth integrands") {
    const std::vector<double> unit{0.0, 1.0};
    CHECK_THAT(integrate_adaptive([](double x) { return x * x; }, unit, 1e-13).value, WithinAbs(1.0 / 3.0, 1e-14));
    CHECK_THAT(integrate_adaptive([](double x) { return std::exp(x); }, unit, 1e-13).value,
               WithinAbs(std::exp(1.0) - 1.0, 1e-13));
    const std::vector<double> half_turn{0.0, M_PI};
    CHECK_THAT(integrate_adaptive([](double x) { return std::sin(x); }, half_turn, 1e-12).value, WithinAbs(2.0, 1e-12));
}

TEST_CASE("kinks listed as breakpoints are integrated exactly") {
    const std::vector<double> pts{0.0, 0.3, 1.0};
    auto f = [](double x) { return std::min(x, 0.3) * std::min(x, 0.3); };
    const double exact = 0.009 + 0.09 * 0.7;
    const auto r = integrate_adaptive(f, pts, 1e-14);
    CHECK_THAT(r.value, WithinAbs(exact, 1e-15));
    CHECK(r.intervals == 2);
}

TEST_CASE("unlisted kinks still converge") {
    const std::vector<double> unit{0.0, 1.0};
    auto f = [](double x) { return std::abs(x - 0.37); };
    const double exact = (0.37 * 0.37 + 0.63 * 0.63) / 2.0;
    CHECK_THAT(integrate_adaptive(f, unit, 1e-12).value, WithinAbs(exact, 1e-12));
}

TEST_CASE("budget exhaustion is a QuadratureFailure") {
    const std::vector<double> unit{0.0, 1.0};
    auto f = [](double x) { return std::sin(1.0 / (x + 1e-9)); };
    try {
        integrate_adaptive(f, unit, 1e-15, 10);
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::QuadratureFailure);
    }
}
