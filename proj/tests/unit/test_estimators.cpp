#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "tailassoc/error.hpp"
#include "tailassoc/estimators.hpp"

#include <cmath>

using namespace tailassoc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("upper bound values") {
    CHECK_THAT(eta_upper_bound(10), WithinAbs(0.9 * (1.25 - 0.03), 1e-15));
    CHECK_THAT(eta_upper_bound(5), WithinAbs(1.104, 1e-15));
    CHECK(eta_upper_bound(2) == 0.75);
    for (std::size_t k = 2; k < 5000; k += 7) {
        const double kk = static_cast<double>(k);
        CHECK_THAT(eta_upper_bound(k), WithinRel((1 - 1 / kk) * (1 + 5 / (2 * kk) - 3 / (kk * kk)), 1e-15));
    }
}

TEST_CASE("optimised eta equals the literal double sum") {
    std::mt19937_64 gen(21);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 2 + gen() % 40;
        auto x = oracle::distinct_values(n, gen);
        auto y = oracle::distinct_values(n, gen);
        const auto s = make_sample(x, y);
        for (std::size_t k = 2; k <= n; ++k) {
            CHECK(eta_kn(s, k).value == oracle::eta(x, y, k));
            CHECK(eta_kn(s, k, Direction::YGivenX).value == oracle::eta(y, x, k));
        }
    }
}

TEST_CASE("comonotone and discordant extremes") {
    for (std::size_t k = 2; k <= 60; ++k) {
        std::vector<double> x, y;
        for (std::size_t i = 0; i < 80; ++i) {
            x.push_back(static_cast<double>(i));
            y.push_back(std::exp(0.01 * static_cast<double>(i)));
        }
        const auto s = make_sample(x, y);
        CHECK(eta_kn(s, k).value == eta_upper_bound(k));
        CHECK(delta_kn(s, k).value == 0.0);
    }
    // Top k-1 of Y paired with the bottom of X.
    std::vector<double> x, y;
    for (std::size_t i = 0; i < 60; ++i) {
        x.push_back(static_cast<double>(i));
        y.push_back(-static_cast<double>(i));
    }
    const auto s = make_sample(x, y);
    for (std::size_t k = 2; k <= 30; ++k) CHECK(eta_kn(s, k).value == 0.0);
}

TEST_CASE("eta is invariant under strictly increasing maps") {
    std::mt19937_64 gen(22);
    auto x = oracle::distinct_values(200, gen);
    auto y = oracle::distinct_values(200, gen);
    std::vector<double> fx, fy;
    for (double v : x) fx.push_back(std::exp(v / 50.0) * 3.0 + 1.0);
    for (double v : y) fy.push_back(std::atan(v / 200.0));
    const auto a = make_sample(x, y);
    const auto b = make_sample(fx, fy);
    for (std::size_t k : {5u, 20u, 100u, 200u}) {
        CHECK(delta_kn(a, k).value == delta_kn(b, k).value);
        CHECK(eta_kn(a, k).value == eta_kn(b, k).value);
    }
}

TEST_CASE("delta is antisymmetric and eta respects the bound") {
    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 40; ++rep) {
        auto x = oracle::distinct_values(100, gen);
        auto y = oracle::distinct_values(100, gen);
        const auto s = make_sample(x, y);
        for (std::size_t k : {2u, 10u, 50u, 100u}) {
            CHECK(delta_kn(s, k).value == -delta_kn(s.swapped(), k).value);
            const double e = eta_kn(s, k).value;
            CHECK(e >= 0.0);
            CHECK(e <= eta_upper_bound(k));
        }
    }
}

TEST_CASE("tail copula slice matches its definition and integrates to eta") {
    std::mt19937_64 gen(24);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 20 + gen() % 200;
        auto x = oracle::distinct_values(n, gen);
        auto y = oracle::distinct_values(n, gen);
        const auto s = make_sample(x, y);
        const std::size_t k = 2 + gen() % (n - 1);
        const auto g = empirical_tail_copula_slice(s, k);
        const auto rho = oracle::concomitant_ranks(x, y);
        CHECK(g.breakpoints.front() == 0.0);
        CHECK(g.breakpoints.back() == 1.0);
        CHECK(g(0.0) == 0.0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int t = 0; t < 50; ++t) {
            const double uu = u(gen);
            CHECK(g(uu) == oracle::tail_copula_slice(rho, k, uu));
        }
        CHECK_THAT(eta_from_tail_copula(g), WithinRel(eta_kn(s, k).value, 1e-12));
    }
}

TEST_CASE("k range and grid validation") {
    const auto s = make_sample({1, 2, 3, 4}, {4, 3, 1, 2});
    CHECK_THROWS_AS(eta_kn(s, 1), Error);
    CHECK_THROWS_AS(eta_kn(s, 5), Error);
    CHECK_NOTHROW(eta_kn(s, 4));
    const std::vector<std::size_t> empty;
    const std::vector<std::size_t> unsorted{3, 2};
    const std::vector<std::size_t> too_big{2, 5};
    CHECK_THROWS_AS(validate_kgrid(empty, 4), Error);
    CHECK_THROWS_AS(validate_kgrid(unsorted, 4), Error);
    CHECK_THROWS_AS(validate_kgrid(too_big, 4), Error);
}

TEST_CASE("sweeps agree with pointwise estimates") {
    std::mt19937_64 gen(25);
    auto x = oracle::distinct_values(300, gen);
    auto y = oracle::distinct_values(300, gen);
    const auto s = make_sample(x, y);
    const std::vector<std::size_t> grid{10, 20, 40, 80, 160};
    const auto sweep = delta_sweep(s, grid);
    const auto etas = eta_sweep(s, grid, Direction::YGivenX);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto d = delta_kn(s, grid[i]);
        CHECK(sweep[i].value == d.value);
        CHECK(sweep[i].eta_xy.value == d.eta_xy.value);
        CHECK(etas[i].value == d.eta_yx.value);
        CHECK(sweep[i].value == sweep[i].eta_xy.value - sweep[i].eta_yx.value);
    }
}
