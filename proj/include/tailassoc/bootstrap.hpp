#pragma once

#include "tailassoc/estimators.hpp"
#include "tailassoc/ranks.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tailassoc {

/// Law of the i.i.d. positive multipliers xi_i.
struct MultiplierScheme {
    enum class Distribution { UnitExponential, Gamma };
    Distribution distribution = Distribution::UnitExponential;
    double mu = 1.0;
    double tau = 1.0;

    static MultiplierScheme unit_exponential() { return {}; }
    /// Gamma multipliers with mean mu and standard deviation tau.
    static MultiplierScheme gamma(double mu, double tau);
    /// "exponential" or "gamma:MU,TAU".
    static MultiplierScheme parse(const std::string& text);

    std::string describe() const;
};

/// n positive multipliers from the stream identified by (seed, stream).
std::vector<double> draw_multipliers(const MultiplierScheme& scheme, std::size_t n, std::uint64_t seed,
                                     std::uint64_t stream = 0);

/// R(v_i) = sum_j (w_j / mean(w)) I(v_j > v_i). With unit weights this is the
/// reverse rank minus one. Throws LengthMismatch, TiesPresent.
std::vector<double> weighted_reverse_rank(std::span<const double> v, std::span<const double> weights);

/// Multiplier-bootstrap eta through the weighted-rank identity
/// (3/k^3) sum_{i,j <= tau(k)} c_i c_j (k - max(R(X_[i]), R(X_[j])))_+,
/// c_i = xi_[i] / mean(xi), tau(k) = max{i : R(Y_(i)) < k}.
double bootstrap_eta(const PairedSample& s, std::size_t k, std::span<const double> weights,
                     Direction direction = Direction::XGivenY);

double bootstrap_delta(const PairedSample& s, std::size_t k, std::span<const double> weights);

/// Upper standard normal quantile: z with P(Z > z) = p. AS241 rational
/// approximation (about 1e-16 relative). Throws DomainError outside (0, 1).
double normal_quantile(double p);

struct TestResult {
    std::size_t k = 0;
    double statistic = 0.0;
    double p_value = 0.0;
    /// m_k: replicates satisfying the algorithm's exceedance rule.
    std::size_t exceedances = 0;
    double boot_sd = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t B = 0;
    double alpha = 0.05;
};

struct BootstrapOptions {
    std::size_t B = 100;
    MultiplierScheme scheme;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    /// Worker threads for replicates; results do not depend on this.
    unsigned threads = 1;
};

/// H0: eta = 0 against eta > 0. Replicate b counts when
/// eta_boot - eta > eta. Replicate b draws its multipliers from stream b of
/// the seed, so output is independent of scheduling.
std::vector<TestResult> test_eta_zero(const PairedSample& s, std::span<const std::size_t> kgrid,
                                      const BootstrapOptions& options,
                                      Direction direction = Direction::XGivenY);

/// H0: Delta = 0 against Delta != 0. Replicate b counts when
/// |Delta_boot - Delta| > |Delta|.
std::vector<TestResult> test_delta_zero(const PairedSample& s, std::span<const std::size_t> kgrid,
                                        const BootstrapOptions& options);

/// Sweep-level decision: reject when the share of k with p < alpha reaches
/// `rejection_fraction`.
struct SweepVerdict {
    double fraction_significant = 0.0;
    double rejection_fraction = 0.75;
    bool reject = false;
};

SweepVerdict summarize(std::span<const TestResult> results, double rejection_fraction = 0.75);

} // namespace tailassoc
