#pragma once

#include "tailassoc/ranks.hpp"
#include "tailassoc/rng.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tailassoc {

/// C(u,v) = min(u, theta v + (1 - theta)(u + v - 1)_+), theta in [0, 1].
struct Nelsen {
    double theta = 0.0;
};

/// Khoudraji-transformed Gumbel copula
/// u^(1-alpha) v^(1-beta) exp(-[(-alpha log u)^delta + (-beta log v)^delta]^(1/delta)).
struct KhoudrajiGumbel {
    double alpha = 1.0;
    double beta = 1.0;
    double delta = 1.0;
};

/// Copula of (Z_1, max(Z_1, ..., Z_m)) for i.i.d. Z: min(u, v^(1/m)) v^(1-1/m).
struct MaxModel {
    int m = 2;
};

using CopulaModel = std::variant<Nelsen, KhoudrajiGumbel, MaxModel>;

/// Throws DomainError when parameters are outside their ranges.
void validate(const CopulaModel& model);

/// Parses "nelsen:THETA", "khoudraji-gumbel:ALPHA,BETA,DELTA" (alias "kg") or
/// "max:M". Throws InvalidConfig on malformed text, DomainError on bad values.
CopulaModel parse_model(std::string_view spec);
std::string describe(const CopulaModel& model);

double copula_cdf(const CopulaModel& model, double u, double v);

/// Joint survival copula u + v - 1 + C(1 - u, 1 - v).
double survival_copula(const CopulaModel& model, double u, double v);

/// Upper tail copula Lambda(x, y) on [0, inf]^2 minus (inf, inf).
double tail_copula(const CopulaModel& model, double x, double y);

/// Stable tail dependence function x + y - Lambda(x, y).
double stable_tail_dependence(const CopulaModel& model, double x, double y);

/// Classical tail dependence coefficient chi = Lambda(1, 1).
double tail_dependence_chi(const CopulaModel& model);

enum class PopulationMethod { ClosedForm, Quadrature };
std::string_view to_string(PopulationMethod m) noexcept;

struct PopulationValues {
    double eta_xy = 0.0;
    double eta_yx = 0.0;
    /// Equals eta_xy - eta_yx up to the quadrature tolerance when the two
    /// were obtained by different routes.
    double delta = 0.0;
    PopulationMethod eta_method = PopulationMethod::ClosedForm;
    PopulationMethod delta_method = PopulationMethod::ClosedForm;
};

/// Closed forms where known (Nelsen, MaxModel, Khoudraji-Gumbel delta at
/// delta = 2), otherwise 3 * integral of the squared tail-copula slices.
PopulationValues population_values(const CopulaModel& model, double integration_tol = 1e-8);

/// Always integrates, regardless of closed-form availability.
PopulationValues population_values_quadrature(const CopulaModel& model, double integration_tol = 1e-8);

/// Closed-form tail asymmetry for the Khoudraji-Gumbel family at delta = 2.
/// Requires alpha, beta > 0.
double khoudraji_gumbel2_delta(double alpha, double beta);

/// n i.i.d. draws from the model. Nelsen and Khoudraji-Gumbel pairs have
/// uniform(0,1) margins; MaxModel returns (Z_1, max Z_i) itself, so its y
/// margin is Beta(m, 1).
/// Deterministic in (model, n, seed). Throws InvalidN for n < 2.
PairedSample sample(const CopulaModel& model, std::size_t n, std::uint64_t seed);

/// Symmetric Gumbel pair via the positive-stable frailty construction.
/// Exposed for tests of the Khoudraji mixing.
struct UniformPair {
    double u;
    double v;
};
UniformPair draw_gumbel(double delta, Rng& rng);

/// Positive stable variate with Laplace transform exp(-t^index), index in (0, 1].
double draw_positive_stable(double index, Rng& rng);

} // namespace tailassoc
