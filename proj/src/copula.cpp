#include "tailassoc/copula.hpp"

#include "tailassoc/error.hpp"
#include "tailassoc/quadrature.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace tailassoc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_unit(double u, double v) {
    require(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0, ErrorKind::DomainError,
            "copula arguments must lie in [0, 1]");
}

double parse_number(std::string_view text) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    require(ec == std::errc() && ptr == last && !text.empty(), ErrorKind::InvalidConfig,
            "cannot parse number '" + std::string(text) + "'");
    return value;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_number(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

// Gumbel tail copula at already-scaled arguments a = alpha x, b = beta y:
// a + b - (a^delta + b^delta)^(1/delta), written to avoid cancellation and overflow.
double gumbel_tail(double a, double b, double delta) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (hi == 0.0) return 0.0;
    if (std::isinf(hi)) return delta > 1.0 ? lo : 0.0;
    const double r = lo / hi;
    const double excess = std::expm1(std::log1p(std::pow(r, delta)) / delta);
    return std::max(0.0, lo - hi * excess);
}

struct Slices {
    std::function<double(double)> xy; // u -> Lambda(u, 1)
    std::function<double(double)> yx; // v -> Lambda(1, v)
    std::vector<double> kinks_xy;
    std::vector<double> kinks_yx;
};

Slices slices_of(const CopulaModel& model) {
    Slices s;
    s.xy = [model](double u) { return tail_copula(model, u, 1.0); };
    s.yx = [model](double v) { return tail_copula(model, 1.0, v); };
    std::visit(overloaded{
                   [&](const Nelsen& c) {
                       // Lambda(1, v) = min(v, theta) bends at v = theta.
                       if (c.theta > 0.0 && c.theta < 1.0) s.kinks_yx.push_back(c.theta);
                   },
                   [&](const MaxModel& c) {
                       // Lambda(u, 1) = min(u, 1/m) bends at u = 1/m.
                       s.kinks_xy.push_back(1.0 / c.m);
                   },
                   [](const KhoudrajiGumbel&) {},
               },
               model);
    return s;
}

double three_int_square(const std::function<double(double)>& slice, const std::vector<double>& kinks,
                        double tol) {
    std::vector<double> points{0.0};
    points.insert(points.end(), kinks.begin(), kinks.end());
    points.push_back(1.0);
    auto sq = [&](double u) {
        const double l = slice(u);
        return 3.0 * l * l;
    };
    return integrate_adaptive(sq, points, tol).value;
}

} // namespace

void validate(const CopulaModel& model) {
    std::visit(overloaded{
                   [](const Nelsen& c) {
                       require(c.theta >= 0.0 && c.theta <= 1.0, ErrorKind::DomainError,
                               "Nelsen theta must lie in [0, 1]");
                   },
                   [](const KhoudrajiGumbel& c) {
                       require(c.alpha >= 0.0 && c.alpha <= 1.0 && c.beta >= 0.0 && c.beta <= 1.0,
                               ErrorKind::DomainError, "Khoudraji alpha and beta must lie in [0, 1]");
                       require(c.delta >= 1.0 && std::isfinite(c.delta), ErrorKind::DomainError,
                               "Gumbel delta must be a finite value >= 1");
                   },
                   [](const MaxModel& c) {
                       require(c.m >= 2, ErrorKind::DomainError, "MaxModel m must be >= 2");
                   },
               },
               model);
}

CopulaModel parse_model(std::string_view spec) {
    const auto colon = spec.find(':');
    require(colon != std::string_view::npos, ErrorKind::InvalidConfig,
            "model spec must look like family:params, got '" + std::string(spec) + "'");
    const auto family = spec.substr(0, colon);
    const auto params = parse_list(spec.substr(colon + 1));
    CopulaModel model;
    if (family == "nelsen") {
        require(params.size() == 1, ErrorKind::InvalidConfig, "nelsen takes one parameter");
        model = Nelsen{params[0]};
    } else if (family == "khoudraji-gumbel" || family == "kg") {
        require(params.size() == 3, ErrorKind::InvalidConfig, "khoudraji-gumbel takes alpha,beta,delta");
        model = KhoudrajiGumbel{params[0], params[1], params[2]};
    } else if (family == "max") {
        require(params.size() == 1 && params[0] == std::floor(params[0]), ErrorKind::InvalidConfig,
                "max takes one integer parameter");
        require(params[0] >= 2.0 && params[0] <= 1e6, ErrorKind::DomainError, "MaxModel m must be >= 2");
        model = MaxModel{static_cast<int>(params[0])};
    } else {
        throw Error(ErrorKind::InvalidConfig, "unknown model family '" + std::string(family) + "'");
    }
    validate(model);
    return model;
}

std::string describe(const CopulaModel& model) {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const Nelsen& c) { os << "nelsen:" << c.theta; },
                   [&](const KhoudrajiGumbel& c) {
                       os << "khoudraji-gumbel:" << c.alpha << ',' << c.beta << ',' << c.delta;
                   },
                   [&](const MaxModel& c) { os << "max:" << c.m; },
               },
               model);
    return os.str();
}

double copula_cdf(const CopulaModel& model, double u, double v) {
    check_unit(u, v);
    return std::visit(overloaded{
                          [&](const Nelsen& c) {
                              return std::min(u, c.theta * v + (1.0 - c.theta) * std::max(u + v - 1.0, 0.0));
                          },
                          [&](const KhoudrajiGumbel& c) {
                              if (u == 0.0 || v == 0.0) return 0.0;
                              const double a = -c.alpha * std::log(u);
                              const double b = -c.beta * std::log(v);
                              const double norm = std::pow(std::pow(a, c.delta) + std::pow(b, c.delta), 1.0 / c.delta);
                              return std::pow(u, 1.0 - c.alpha) * std::pow(v, 1.0 - c.beta) * std::exp(-norm);
                          },
                          [&](const MaxModel& c) {
                              const double inv_m = 1.0 / c.m;
                              return std::min(u, std::pow(v, inv_m)) * std::pow(v, 1.0 - inv_m);
                          },
                      },
                      model);
}

double survival_copula(const CopulaModel& model, double u, double v) {
    check_unit(u, v);
    const double raw = u + v - 1.0 + copula_cdf(model, 1.0 - u, 1.0 - v);
    return std::clamp(raw, 0.0, std::min(u, v));
}

double tail_copula(const CopulaModel& model, double x, double y) {
    require(x >= 0.0 && y >= 0.0 && !(std::isinf(x) && std::isinf(y)), ErrorKind::DomainError,
            "tail copula arguments must be >= 0 and not both infinite");
    return std::visit(overloaded{
                          [&](const Nelsen& c) { return c.theta == 0.0 ? 0.0 : std::min(y, c.theta * x); },
                          [&](const KhoudrajiGumbel& c) {
                              const double a = c.alpha == 0.0 ? 0.0 : c.alpha * x;
                              const double b = c.beta == 0.0 ? 0.0 : c.beta * y;
                              return gumbel_tail(a, b, c.delta);
                          },
                          [&](const MaxModel& c) { return std::min(x, y / c.m); },
                      },
                      model);
}

double stable_tail_dependence(const CopulaModel& model, double x, double y) {
    const double lambda = tail_copula(model, x, y);
    if (std::isinf(x) || std::isinf(y)) return std::numeric_limits<double>::infinity();
    return x + y - lambda;
}

double tail_dependence_chi(const CopulaModel& model) { return tail_copula(model, 1.0, 1.0); }

std::string_view to_string(PopulationMethod m) noexcept {
    return m == PopulationMethod::ClosedForm ? "closed_form" : "quadrature";
}

double khoudraji_gumbel2_delta(double alpha, double beta) {
    require(alpha > 0.0 && beta > 0.0, ErrorKind::DomainError, "closed form needs alpha, beta > 0");
    const double a = alpha;
    const double b = beta;
    const double r = std::hypot(a, b);
    const double a2 = a * a;
    const double b2 = b * b;
    const double a3 = a2 * a;
    const double b3 = b2 * b;
    return 3.0 * a3 * std::asinh(b / a) / b - 2.0 * a3 / b - 4.0 * a2 + 2.0 * a2 * r / b + a * r -
           3.0 * b3 * std::asinh(a / b) / a + 2.0 * b3 / a + 4.0 * b2 - 2.0 * b2 * r / a - b * r;
}

PopulationValues population_values_quadrature(const CopulaModel& model, double integration_tol) {
    validate(model);
    require(integration_tol > 0.0, ErrorKind::DomainError, "integration tolerance must be positive");
    const auto s = slices_of(model);
    PopulationValues pv;
    pv.eta_xy = three_int_square(s.xy, s.kinks_xy, integration_tol);
    pv.eta_yx = three_int_square(s.yx, s.kinks_yx, integration_tol);
    pv.delta = pv.eta_xy - pv.eta_yx;
    pv.eta_method = PopulationMethod::Quadrature;
    pv.delta_method = PopulationMethod::Quadrature;
    return pv;
}

PopulationValues population_values(const CopulaModel& model, double integration_tol) {
    validate(model);
    require(integration_tol > 0.0, ErrorKind::DomainError, "integration tolerance must be positive");
    return std::visit(
        overloaded{
            [](const Nelsen& c) {
                const double t = c.theta;
                PopulationValues pv;
                pv.eta_xy = t * t;
                pv.eta_yx = 3.0 * t * t - 2.0 * t * t * t;
                pv.delta = -2.0 * t * t * (1.0 - t);
                return pv;
            },
            [](const MaxModel& c) {
                const double m = c.m;
                PopulationValues pv;
                pv.eta_xy = 3.0 / (m * m) - 2.0 / (m * m * m);
                pv.eta_yx = 1.0 / (m * m);
                pv.delta = 2.0 / (m * m) * (1.0 - 1.0 / m);
                return pv;
            },
            [&](const KhoudrajiGumbel& c) {
                auto pv = population_values_quadrature(model, integration_tol);
                constexpr double kGuard = 1e-12;
                if (c.delta == 2.0 && c.alpha >= kGuard && c.beta >= kGuard) {
                    pv.delta = khoudraji_gumbel2_delta(c.alpha, c.beta);
                    pv.delta_method = PopulationMethod::ClosedForm;
                }
                return pv;
            },
        },
        model);
}

double draw_positive_stable(double index, Rng& rng) {
    require(index > 0.0 && index <= 1.0, ErrorKind::DomainError, "stable index must lie in (0, 1]");
    if (index == 1.0) return 1.0;
    // Kanter's representation.
    const double theta = std::numbers::pi * rng.uniform();
    const double e = rng.exponential();
    const double a = index;
    return std::sin(a * theta) / std::pow(std::sin(theta), 1.0 / a) *
           std::pow(std::sin((1.0 - a) * theta) / e, (1.0 - a) / a);
}

UniformPair draw_gumbel(double delta, Rng& rng) {
    // Marshall-Olkin: U_j = psi(E_j / V) with psi(t) = exp(-t^(1/delta)) and V
    // the positive stable frailty whose Laplace transform is psi.
    const double index = 1.0 / delta;
    const double frailty = draw_positive_stable(index, rng);
    const double e1 = rng.exponential();
    const double e2 = rng.exponential();
    return {std::exp(-std::pow(e1 / frailty, index)), std::exp(-std::pow(e2 / frailty, index))};
}

namespace {

// max(W^(1/a), U^(1/(1-a))), dropping the factor whose exponent degenerates.
double khoudraji_mix(double w, double a, Rng& rng) {
    if (a == 1.0) return w;
    const double u = rng.uniform();
    if (a == 0.0) return u;
    return std::max(std::pow(w, 1.0 / a), std::pow(u, 1.0 / (1.0 - a)));
}

UniformPair draw_one(const CopulaModel& model, Rng& rng) {
    return std::visit(overloaded{
                          [&](const Nelsen& c) -> UniformPair {
                              // Given V = v, U is supported on at most two points:
                              // for v > 1/(1+theta) it sits at (v - 1 + theta)/theta;
                              // otherwise at theta v with mass theta, else at 1 - v.
                              const double v = rng.uniform();
                              const double w = rng.uniform();
                              const double t = c.theta;
                              double u = 0.0;
                              if (v * (1.0 + t) > 1.0) {
                                  u = (v - 1.0 + t) / t;
                              } else {
                                  u = w <= t ? t * v : 1.0 - v;
                              }
                              return {u, v};
                          },
                          [&](const KhoudrajiGumbel& c) -> UniformPair {
                              const auto g = draw_gumbel(c.delta, rng);
                              const double u = khoudraji_mix(g.u, c.alpha, rng);
                              const double v = khoudraji_mix(g.v, c.beta, rng);
                              return {u, v};
                          },
                          [&](const MaxModel& c) -> UniformPair {
                              const double z1 = rng.uniform();
                              double y = z1;
                              for (int j = 1; j < c.m; ++j) y = std::max(y, rng.uniform());
                              // Literal construction: Y keeps its Beta(m, 1) margin.
                              // Rank statistics only see the copula.
                              return {z1, y};
                          },
                      },
                      model);
}

} // namespace

PairedSample sample(const CopulaModel& model, std::size_t n, std::uint64_t seed) {
    validate(model);
    require(n >= 2, ErrorKind::InvalidN, "sample size must be >= 2");
    Rng rng(seed, 0x5A4D504CULL);
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = draw_one(model, rng);
        x[i] = p.u;
        y[i] = p.v;
    }
    // Coincident doubles are possible in principle (underflow in the Gumbel
    // frailty, or the Nelsen singular components); break them reproducibly.
    return make_sample(std::move(x), std::move(y), TiePolicy::jitter(seed));
}

} // namespace tailassoc
