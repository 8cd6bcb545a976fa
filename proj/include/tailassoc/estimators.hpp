#pragma once

#include "tailassoc/ranks.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tailassoc {

/// Which series is measured against which. XGivenY is eta(X|Y): the
/// influence of extreme X on extreme Y, with concomitants taken along
/// decreasing Y.
enum class Direction { XGivenY, YGivenX };

std::string_view to_string(Direction d) noexcept;

struct EtaEstimate {
    double value = 0.0;
    std::size_t k = 0;
    std::size_t n = 0;
    Direction direction = Direction::XGivenY;
};

struct DeltaEstimate {
    double value = 0.0;
    std::size_t k = 0;
    std::size_t n = 0;
    EtaEstimate eta_xy;
    EtaEstimate eta_yx;
};

/// Piecewise-constant slice u -> Lambda_hat_{k,n}(u, 1) on [0, 1].
///
/// values[j] is the function value on the half-open segment
/// (breakpoints[j], breakpoints[j+1]]; the function is 0 at u = 0.
/// breakpoints starts at 0 and ends at 1.
struct TailCopulaGrid {
    std::size_t k = 0;
    std::size_t n = 0;
    std::vector<double> breakpoints;
    std::vector<double> values;

    double operator()(double u) const;
};

/// Upper value of the sample eta for a given k, (1 - 1/k)(1 + 5/(2k) - 3/k^2).
double eta_upper_bound(std::size_t k);

/// Raw double sum  sum_{i,j<k} (k + 1 - max(rho_i, rho_j))_+  for the first k-1
/// concomitants. Exact integer arithmetic in O(k).
std::uint64_t eta_rank_sum(std::span<const std::size_t> rho, std::size_t k);

/// eta_{k,n} from precomputed concomitant ranks (one rank pass can serve a
/// whole k sweep). Throws KOutOfRange unless 2 <= k <= n.
double eta_from_ranks(const ConcomitantRanks& ranks, std::size_t k);

EtaEstimate eta_kn(const PairedSample& s, std::size_t k, Direction direction = Direction::XGivenY);

DeltaEstimate delta_kn(const PairedSample& s, std::size_t k);

TailCopulaGrid empirical_tail_copula_slice(const PairedSample& s, std::size_t k,
                                           Direction direction = Direction::XGivenY);
TailCopulaGrid tail_copula_slice_from_ranks(const ConcomitantRanks& ranks, std::size_t k);

/// 3 * integral_0^1 g(u)^2 du, evaluated exactly segment by segment.
double eta_from_tail_copula(const TailCopulaGrid& g);

/// Checks that kgrid is strictly increasing with every k in [2, n].
void validate_kgrid(std::span<const std::size_t> kgrid, std::size_t n);

std::vector<EtaEstimate> eta_sweep(const PairedSample& s, std::span<const std::size_t> kgrid,
                                   Direction direction = Direction::XGivenY);

std::vector<DeltaEstimate> delta_sweep(const PairedSample& s, std::span<const std::size_t> kgrid);

} // namespace tailassoc
