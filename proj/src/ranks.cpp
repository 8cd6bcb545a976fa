#include "tailassoc/ranks.hpp"

#include "tailassoc/error.hpp"
#include "tailassoc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tailassoc {

namespace {

bool has_ties(std::span<const double> v) {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

void jitter_series(std::vector<double>& v, Rng& rng) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Index tie-break keeps the grouping deterministic.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < order.size(); ++i) {
        const double d = v[order[i]] - v[order[i - 1]];
        if (d > 0.0) gap = std::min(gap, d);
    }
    if (!std::isfinite(gap)) gap = std::max(1.0, std::abs(v[order[0]])) * 1e-6;

    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() && v[order[end]] == v[order[start]]) ++end;
        const std::size_t m = end - start;
        if (m > 1) {
            // Fisher-Yates over the group members, then assign increasing offsets.
            for (std::size_t i = m - 1; i > 0; --i) {
                const std::size_t j = rng.below(i + 1);
                std::swap(order[start + i], order[start + j]);
            }
            const double base = v[order[start]];
            const double step = gap / (2.0 * static_cast<double>(m));
            for (std::size_t j = 0; j < m; ++j) {
                v[order[start + j]] = base + static_cast<double>(j) * step;
            }
        }
        start = end;
    }
}

} // namespace

PairedSample make_sample(std::vector<double> x, std::vector<double> y, TiePolicy policy) {
    require(x.size() == y.size(), ErrorKind::LengthMismatch,
            "x has " + std::to_string(x.size()) + " values, y has " + std::to_string(y.size()));
    require(x.size() >= 2, ErrorKind::LengthMismatch, "need at least 2 observations");
    auto finite = [](double d) { return std::isfinite(d); };
    require(std::all_of(x.begin(), x.end(), finite) && std::all_of(y.begin(), y.end(), finite),
            ErrorKind::NonFinite, "series contain NaN or infinite values");

    bool jittered = false;
    const bool x_ties = has_ties(x);
    const bool y_ties = has_ties(y);
    if (x_ties || y_ties) {
        require(policy.kind == TiePolicy::Kind::Jitter, ErrorKind::TiesPresent,
                std::string("duplicate values in ") + (x_ties ? "x" : "y"));
        if (x_ties) {
            Rng rng(policy.seed, 1);
            jitter_series(x, rng);
        }
        if (y_ties) {
            Rng rng(policy.seed, 2);
            jitter_series(y, rng);
        }
        require(!has_ties(x) && !has_ties(y), ErrorKind::TiesPresent,
                "jitter could not separate tied values at this magnitude");
        jittered = true;
    }
    return PairedSample(std::move(x), std::move(y), jittered);
}

std::vector<std::size_t> descending_order(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return order;
}

std::vector<std::size_t> reverse_ranks(std::span<const double> v) {
    const auto order = descending_order(v);
    std::vector<std::size_t> rank(v.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        if (pos > 0) {
            require(v[order[pos]] != v[order[pos - 1]], ErrorKind::TiesPresent,
                    "duplicate value in ranked series");
        }
        rank[order[pos]] = pos + 1;
    }
    return rank;
}

ConcomitantRanks concomitant_ranks(const PairedSample& s) {
    const auto x_rank = reverse_ranks(s.x());
    ConcomitantRanks out;
    out.y_order = descending_order(s.y());
    out.rho.resize(s.size());
    for (std::size_t i = 0; i < out.y_order.size(); ++i) out.rho[i] = x_rank[out.y_order[i]];
    return out;
}

} // namespace tailassoc
