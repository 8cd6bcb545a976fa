#include "tailassoc/estimators.hpp"

#include "tailassoc/error.hpp"

#include <algorithm>
#include <string>

namespace tailassoc {

std::string_view to_string(Direction d) noexcept {
    return d == Direction::XGivenY ? "x_given_y" : "y_given_x";
}

double TailCopulaGrid::operator()(double u) const {
    if (u <= 0.0 || values.empty()) return 0.0;
    // First breakpoint >= u closes the segment containing u.
    auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), u);
    if (it == breakpoints.end()) return values.back();
    const auto j = static_cast<std::size_t>(it - breakpoints.begin());
    return values[j - 1];
}

double eta_upper_bound(std::size_t k) {
    // Same value written as 3 S / k^3 with the comonotone rank sum
    // S = (k - 1)(2k^2 + 5k - 6) / 6, so a comonotone sample reproduces it
    // bit for bit.
    const std::uint64_t k64 = k;
    const std::uint64_t sum = (k64 - 1) * (2 * k64 * k64 + 5 * k64 - 6) / 6;
    const double kk = static_cast<double>(k);
    return 3.0 * static_cast<double>(sum) / (kk * kk * kk);
}

namespace {

void check_k(std::size_t k, std::size_t n) {
    require(k >= 2 && k <= n, ErrorKind::KOutOfRange,
            "k = " + std::to_string(k) + " must lie in [2, " + std::to_string(n) + "]");
}

ConcomitantRanks ranks_for(const PairedSample& s, Direction d) {
    return d == Direction::XGivenY ? concomitant_ranks(s) : concomitant_ranks(s.swapped());
}

} // namespace

std::uint64_t eta_rank_sum(std::span<const std::size_t> rho, std::size_t k) {
    // Only ranks <= k produce positive terms. Mark them, then walk in
    // increasing rank order: the a-th smallest rank r is the maximum of
    // exactly 2a - 1 ordered pairs, each contributing k + 1 - r.
    std::vector<unsigned char> present(k + 1, 0);
    const std::size_t limit = std::min(k - 1, rho.size());
    for (std::size_t i = 0; i < limit; ++i) {
        if (rho[i] <= k) present[rho[i]] = 1;
    }
    std::uint64_t sum = 0;
    std::uint64_t a = 0;
    for (std::size_t r = 1; r <= k; ++r) {
        if (!present[r]) continue;
        ++a;
        sum += static_cast<std::uint64_t>(k + 1 - r) * (2 * a - 1);
    }
    return sum;
}

double eta_from_ranks(const ConcomitantRanks& ranks, std::size_t k) {
    check_k(k, ranks.size());
    const double kk = static_cast<double>(k);
    return 3.0 * static_cast<double>(eta_rank_sum(ranks.rho, k)) / (kk * kk * kk);
}

EtaEstimate eta_kn(const PairedSample& s, std::size_t k, Direction direction) {
    check_k(k, s.size());
    return {eta_from_ranks(ranks_for(s, direction), k), k, s.size(), direction};
}

DeltaEstimate delta_kn(const PairedSample& s, std::size_t k) {
    const auto xy = eta_kn(s, k, Direction::XGivenY);
    const auto yx = eta_kn(s, k, Direction::YGivenX);
    return {xy.value - yx.value, k, s.size(), xy, yx};
}

TailCopulaGrid tail_copula_slice_from_ranks(const ConcomitantRanks& ranks, std::size_t k) {
    check_k(k, ranks.size());
    const double kk = static_cast<double>(k);

    // Indicator rho_i < k u + 1 fires for u > (rho_i - 1)/k; ranks above k
    // never fire on [0, 1].
    std::vector<std::size_t> fired;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (ranks.rho[i] <= k) fired.push_back(ranks.rho[i]);
    }
    std::sort(fired.begin(), fired.end());

    TailCopulaGrid g;
    g.k = k;
    g.n = ranks.size();
    g.breakpoints.push_back(0.0);
    std::size_t count = 0;
    for (std::size_t r : fired) {
        const double b = static_cast<double>(r - 1) / kk;
        if (b > g.breakpoints.back()) {
            g.values.push_back(static_cast<double>(count) / kk);
            g.breakpoints.push_back(b);
        }
        ++count;
    }
    g.values.push_back(static_cast<double>(count) / kk);
    g.breakpoints.push_back(1.0);
    return g;
}

TailCopulaGrid empirical_tail_copula_slice(const PairedSample& s, std::size_t k, Direction direction) {
    check_k(k, s.size());
    return tail_copula_slice_from_ranks(ranks_for(s, direction), k);
}

double eta_from_tail_copula(const TailCopulaGrid& g) {
    double integral = 0.0;
    for (std::size_t j = 0; j < g.values.size(); ++j) {
        integral += g.values[j] * g.values[j] * (g.breakpoints[j + 1] - g.breakpoints[j]);
    }
    return 3.0 * integral;
}

void validate_kgrid(std::span<const std::size_t> kgrid, std::size_t n) {
    require(!kgrid.empty(), ErrorKind::InvalidConfig, "k grid is empty");
    for (std::size_t i = 0; i < kgrid.size(); ++i) {
        check_k(kgrid[i], n);
        if (i > 0) {
            require(kgrid[i] > kgrid[i - 1], ErrorKind::InvalidConfig, "k grid must be strictly increasing");
        }
    }
}

std::vector<EtaEstimate> eta_sweep(const PairedSample& s, std::span<const std::size_t> kgrid,
                                   Direction direction) {
    validate_kgrid(kgrid, s.size());
    const auto ranks = ranks_for(s, direction);
    std::vector<EtaEstimate> out;
    out.reserve(kgrid.size());
    for (std::size_t k : kgrid) out.push_back({eta_from_ranks(ranks, k), k, s.size(), direction});
    return out;
}

std::vector<DeltaEstimate> delta_sweep(const PairedSample& s, std::span<const std::size_t> kgrid) {
    const auto xy = eta_sweep(s, kgrid, Direction::XGivenY);
    const auto yx = eta_sweep(s, kgrid, Direction::YGivenX);
    std::vector<DeltaEstimate> out;
    out.reserve(kgrid.size());
    for (std::size_t i = 0; i < kgrid.size(); ++i) {
        out.push_back({xy[i].value - yx[i].value, kgrid[i], s.size(), xy[i], yx[i]});
    }
    return out;
}

} // namespace tailassoc
