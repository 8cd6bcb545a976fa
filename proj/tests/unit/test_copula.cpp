#include "catch_amalgamated.hpp"

#include "tailassoc/copula.hpp"
#include "tailassoc/error.hpp"
#include "tailassoc/estimators.hpp"

#include <cmath>

using namespace tailassoc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// 30-digit mpmath quadrature of 3 * int_0^1 Lambda(u,1)^2 du (and the y-slice).
struct Frozen {
    KhoudrajiGumbel model;
    double eta_xy;
    double eta_yx;
};

const Frozen frozen[] = {
    {{1.0, 0.5, 2.0}, 0.236500741808366728, 0.168457139643220529},
    {{0.7, 0.3, 2.0}, 0.09644857787906716, 0.064231155594502791},
    {{0.5, 1.0, 2.0}, 0.16845713964322053, 0.23650074180836673},
    {{1.0, 0.5, 3.0}, 0.36073934918708727, 0.22632360525172821},
    {{0.6, 0.6, 1.5}, 0.08419933091690571, 0.08419933091690571},
    {{1.0, 1.0, 2.0}, 0.45638430232970558, 0.45638430232970558},
    {{1.0, 0.5, 1.0}, 0.0, 0.0},
};

} // namespace

TEST_CASE("model parsing") {
    CHECK(std::get<Nelsen>(parse_model("nelsen:0.25")).theta == 0.25);
    const auto kg = std::get<KhoudrajiGumbel>(parse_model("kg:1,0.5,2"));
    CHECK(kg.alpha == 1.0);
    CHECK(kg.beta == 0.5);
    CHECK(kg.delta == 2.0);
    CHECK(std::holds_alternative<KhoudrajiGumbel>(parse_model("khoudraji-gumbel:0.3,0.4,5")));
    CHECK(std::get<MaxModel>(parse_model("max:3")).m == 3);
    CHECK_THROWS_AS(parse_model("nelsen:1.5"), Error);
    CHECK_THROWS_AS(parse_model("kg:1,0.5,0.5"), Error);
    CHECK_THROWS_AS(parse_model("max:0"), Error);
    CHECK_THROWS_AS(parse_model("clayton:2"), Error);
    CHECK_THROWS_AS(parse_model("kg:1,x,2"), Error);
    for (const char* spec : {"nelsen:0.25", "kg:1,0.5,2", "max:4"}) {
        CHECK(describe(parse_model(describe(parse_model(spec)))) == describe(parse_model(spec)));
    }
}

TEST_CASE("copula boundary conditions and survival identity") {
    const CopulaModel models[] = {Nelsen{0.4}, KhoudrajiGumbel{0.8, 0.3, 2.5}, MaxModel{3}};
    for (const auto& m : models) {
        for (double u : {0.0, 0.1, 0.5, 0.93, 1.0}) {
            CHECK_THAT(copula_cdf(m, u, 1.0), WithinAbs(u, 1e-14));
            CHECK_THAT(copula_cdf(m, 1.0, u), WithinAbs(u, 1e-14));
            CHECK_THAT(copula_cdf(m, u, 0.0), WithinAbs(0.0, 1e-14));
            for (double v : {0.2, 0.7}) {
                const double sv = survival_copula(m, u, v);
                CHECK_THAT(sv, WithinAbs(u + v - 1.0 + copula_cdf(m, 1.0 - u, 1.0 - v), 1e-14));
                CHECK(copula_cdf(m, u, v) <= std::min(u, v) + 1e-15);
                CHECK(copula_cdf(m, u, v) >= std::max(u + v - 1.0, 0.0) - 1e-15);
            }
        }
    }
}

TEST_CASE("tail copula is the scaled survival limit, homogeneous and bounded") {
    const CopulaModel models[] = {Nelsen{0.4}, KhoudrajiGumbel{0.8, 0.3, 2.5}, KhoudrajiGumbel{1, 0.5, 2}, MaxModel{2}};
    for (const auto& m : models) {
        for (double x : {0.2, 1.0, 3.0}) {
            for (double y : {0.5, 1.0, 2.0}) {
                const double lam = tail_copula(m, x, y);
                const double t = 1e6;
                CHECK_THAT(t * survival_copula(m, x / t, y / t), WithinAbs(lam, 1e-4));
                CHECK_THAT(tail_copula(m, 2.5 * x, 2.5 * y), WithinRel(2.5 * lam, 1e-12));
                CHECK(lam <= std::min(x, y) + 1e-15);
                CHECK_THAT(stable_tail_dependence(m, x, y), WithinAbs(x + y - lam, 1e-14));
            }
        }
        CHECK_THAT(tail_dependence_chi(m), WithinAbs(tail_copula(m, 1.0, 1.0), 1e-15));
    }
    CHECK_THAT(tail_copula(Nelsen{0.4}, 1.0, INFINITY), WithinAbs(0.4, 1e-15));
    CHECK(tail_copula(Nelsen{0.4}, INFINITY, 1.0) == 1.0);
}

TEST_CASE("closed forms for the Nelsen and max models") {
    for (double th : {0.0, 0.2, 2.0 / 3.0, 1.0}) {
        const auto p = population_values(Nelsen{th});
        CHECK_THAT(p.eta_xy, WithinAbs(th * th, 1e-15));
        CHECK_THAT(p.eta_yx, WithinAbs(3 * th * th - 2 * th * th * th, 1e-15));
        CHECK_THAT(p.delta, WithinAbs(-2 * th * th * (1 - th), 1e-15));
        const auto q = population_values_quadrature(Nelsen{th}, 1e-12);
        CHECK_THAT(q.eta_xy, WithinAbs(p.eta_xy, 1e-11));
        CHECK_THAT(q.eta_yx, WithinAbs(p.eta_yx, 1e-11));
        CHECK(q.eta_method == PopulationMethod::Quadrature);
    }
    for (int m : {2, 3, 7}) {
        const double md = m;
        const auto p = population_values(MaxModel{m});
        CHECK_THAT(p.eta_xy, WithinAbs(3 / (md * md) - 2 / (md * md * md), 1e-15));
        CHECK_THAT(p.eta_yx, WithinAbs(1 / (md * md), 1e-15));
        const auto q = population_values_quadrature(MaxModel{m}, 1e-12);
        CHECK_THAT(q.eta_xy, WithinAbs(p.eta_xy, 1e-11));
        CHECK_THAT(q.eta_yx, WithinAbs(p.eta_yx, 1e-11));
    }
    const auto ex = population_values(Nelsen{2.0 / 3.0});
    CHECK_THAT(ex.eta_xy, WithinAbs(4.0 / 9.0, 1e-15));
    CHECK_THAT(ex.eta_yx, WithinAbs(20.0 / 27.0, 1e-15));
}

TEST_CASE("Khoudraji-Gumbel quadrature against high-precision values") {
    for (const auto& f : frozen) {
        const auto q = population_values_quadrature(f.model, 1e-12);
        CHECK_THAT(q.eta_xy, WithinAbs(f.eta_xy, 1e-10));
        CHECK_THAT(q.eta_yx, WithinAbs(f.eta_yx, 1e-10));
    }
    CHECK_THAT(khoudraji_gumbel2_delta(1.0, 0.5), WithinAbs(0.0680436021651461993, 1e-14));
    CHECK_THAT(khoudraji_gumbel2_delta(0.7, 0.3), WithinAbs(0.032217422284564369, 1e-14));
    CHECK_THAT(khoudraji_gumbel2_delta(0.4, 0.4), WithinAbs(0.0, 1e-15));
    CHECK_THAT(khoudraji_gumbel2_delta(0.5, 1.0), WithinAbs(-0.0680436021651461993, 1e-14));
    const auto p = population_values(KhoudrajiGumbel{1.0, 0.5, 2.0});
    CHECK(p.delta_method == PopulationMethod::ClosedForm);
    CHECK(p.eta_method == PopulationMethod::Quadrature);
    const auto p3 = population_values(KhoudrajiGumbel{1.0, 0.5, 3.0});
    CHECK(p3.delta_method == PopulationMethod::Quadrature);
    CHECK_THAT(p3.delta, WithinAbs(0.13441574393535906, 1e-9));
}

TEST_CASE("samplers: determinism, margins and eta convergence") {
    const CopulaModel uniform_margins[] = {Nelsen{2.0 / 3.0}, KhoudrajiGumbel{1, 0.5, 2}, KhoudrajiGumbel{0.3, 0.9, 4}};
    for (const auto& m : uniform_margins) {
        const auto a = sample(m, 20000, 4);
        const auto b = sample(m, 20000, 4);
        CHECK(std::equal(a.x().begin(), a.x().end(), b.x().begin()));
        for (auto col : {a.x(), a.y()}) {
            double s = 0, s2 = 0;
            for (double v : col) {
                REQUIRE(v > 0.0);
                REQUIRE(v < 1.0);
                s += v;
                s2 += v * v;
            }
            CHECK(std::abs(s / 20000 - 0.5) < 0.01);
            CHECK(std::abs(s2 / 20000 - 1.0 / 3.0) < 0.01);
        }
    }
    const auto kg = sample(KhoudrajiGumbel{1, 0.5, 2}, 20000, 9);
    const auto d = delta_kn(kg, 400);
    CHECK(std::abs(d.eta_xy.value - 0.2365) < 0.08);
    CHECK(std::abs(d.value - 0.068) < 0.06);

    const auto mx = sample(MaxModel{2}, 100, 1);
    for (std::size_t i = 0; i < mx.size(); ++i) {
        CHECK(mx.x()[i] > 0.0);
        CHECK(mx.y()[i] < 1.0);
        CHECK(mx.y()[i] >= mx.x()[i]);
    }
    CHECK_THROWS_AS(sample(Nelsen{0.5}, 1, 0), Error);
}

TEST_CASE("positive stable draws have the right Laplace transform") {
    Rng rng(3);
    const double index = 0.5;
    double acc = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) acc += std::exp(-draw_positive_stable(index, rng));
    CHECK_THAT(acc / n, WithinAbs(std::exp(-1.0), 0.005));
}

TEST_CASE("documented copula examples") {
    const double third = 1.0 / 3.0;
    CHECK_THAT(copula_cdf(Nelsen{2.0 / 3.0}, 0.5, 0.5), WithinAbs(third, 1e-15));
    CHECK_THAT(copula_cdf(MaxModel{2}, 0.9, 0.81), WithinAbs(0.81, 1e-15));
    CHECK_THAT(copula_cdf(KhoudrajiGumbel{1, 0.5, 2}, 0.7, 1.0), WithinAbs(0.7, 1e-15));
    CHECK_THROWS_AS(copula_cdf(Nelsen{0.5}, 1.2, 0.5), Error);
    CHECK_THROWS_AS(survival_copula(Nelsen{0.5}, -0.1, 0.5), Error);
    CHECK_THROWS_AS(tail_copula(Nelsen{0.5}, -1.0, 0.5), Error);

    CHECK(survival_copula(Nelsen{0.3}, 0.0, 0.4) == 0.0);
    CHECK_THAT(survival_copula(Nelsen{0.3}, 1.0, 1.0), WithinAbs(1.0, 1e-15));
    // -0.8 + min(0.9, 0.6 + 0.8/3) with exact thirds.
    CHECK_THAT(survival_copula(Nelsen{2.0 / 3.0}, 0.1, 0.1), WithinAbs(0.6 + 0.8 / 3.0 - 0.8, 1e-15));

    CHECK_THAT(tail_dependence_chi(Nelsen{0.35}), WithinAbs(0.35, 1e-15));
    CHECK_THAT(tail_dependence_chi(Nelsen{2.0 / 3.0}), WithinAbs(2.0 / 3.0, 1e-15));
    CHECK_THAT(tail_copula(MaxModel{4}, 1, 1), WithinAbs(0.25, 1e-15));
    CHECK_THAT(tail_copula(KhoudrajiGumbel{1, 0.5, 2}, 1, 1), WithinAbs(1.5 - std::sqrt(1.25), 1e-15));
    CHECK(tail_dependence_chi(KhoudrajiGumbel{0, 0, 3}) == 0.0);
    for (int m : {2, 3, 5}) CHECK_THAT(tail_dependence_chi(MaxModel{m}), WithinAbs(1.0 / m, 1e-15));

    CHECK_THAT(stable_tail_dependence(Nelsen{0.4}, 2.0, 0.0), WithinAbs(2.0, 1e-15));
    CHECK_THAT(stable_tail_dependence(Nelsen{1.0}, 1.0, 1.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(stable_tail_dependence(MaxModel{2}, 1.0, 1.0), WithinAbs(1.5, 1e-15));

    const auto mx = population_values(MaxModel{2});
    CHECK_THAT(mx.eta_xy, WithinAbs(0.5, 1e-15));
    CHECK_THAT(mx.eta_yx, WithinAbs(0.25, 1e-15));
    CHECK_THAT(mx.delta, WithinAbs(0.25, 1e-15));
    const auto nel = population_values(Nelsen{2.0 / 3.0});
    CHECK_THAT(nel.delta, WithinAbs(-8.0 / 27.0, 1e-15));

    for (double tol : {1e-6, 1e-8, 1e-10}) {
        const auto closed = population_values(KhoudrajiGumbel{1, 0.5, 2}, tol);
        const auto quad = population_values_quadrature(KhoudrajiGumbel{1, 0.5, 2}, tol);
        CHECK(std::abs(closed.delta - quad.delta) <= 10 * tol);
    }
}

TEST_CASE("sampler goodness of fit") {
    const auto mx = sample(MaxModel{3}, 100000, 2);
    double below = 0;
    for (double y : mx.y()) below += y <= 0.5;
    CHECK_THAT(below / 100000, WithinAbs(0.125, 0.01));

    const Nelsen nel{0.45};
    const auto s = sample(nel, 100000, 3);
    for (int i = 1; i <= 20; ++i) {
        for (int j = 1; j <= 20; ++j) {
            const double u = i / 20.0 - 0.025;
            const double v = j / 20.0 - 0.025;
            double count = 0;
            for (std::size_t t = 0; t < s.size(); ++t) count += (s.x()[t] <= u && s.y()[t] <= v);
            CHECK_THAT(count / 100000, WithinAbs(copula_cdf(nel, u, v), 0.01));
        }
    }

    const std::size_t n = 100000;
    const auto kg = sample(KhoudrajiGumbel{1, 0.5, 2}, n, 4);
    const auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)) * 10);
    const auto rx = reverse_ranks(kg.x());
    const auto ry = reverse_ranks(kg.y());
    double joint = 0;
    for (std::size_t t = 0; t < n; ++t) joint += (rx[t] <= k && ry[t] <= k);
    CHECK_THAT(joint / static_cast<double>(k), WithinAbs(1.5 - std::sqrt(1.25), 0.05));
}
