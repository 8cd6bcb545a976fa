#pragma once

// Deliberately naive reference implementations. Each follows the defining
// formula literally, quadratic or worse, and shares no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

inline std::vector<std::size_t> reverse_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> r(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] >= v[i]) ++r[i];
    return r;
}

/// Indices of `v` from largest to smallest by repeated selection.
inline std::vector<std::size_t> by_decreasing(const std::vector<double>& v) {
    std::vector<std::size_t> out;
    std::vector<bool> used(v.size(), false);
    for (std::size_t step = 0; step < v.size(); ++step) {
        std::size_t best = v.size();
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!used[i] && (best == v.size() || v[i] > v[best])) best = i;
        used[best] = true;
        out.push_back(best);
    }
    return out;
}

/// rho_i for the X concomitant of the i-th largest Y.
inline std::vector<std::size_t> concomitant_ranks(const std::vector<double>& x, const std::vector<double>& y) {
    const auto xr = reverse_ranks(x);
    std::vector<std::size_t> rho;
    for (std::size_t idx : by_decreasing(y)) rho.push_back(xr[idx]);
    return rho;
}

/// 3/k^3 sum_{i,j <= k-1} (k + 1 - max(rho_i, rho_j))_+, summed in integers.
inline double eta(const std::vector<double>& x, const std::vector<double>& y, std::size_t k) {
    const auto rho = concomitant_ranks(x, y);
    std::int64_t sum = 0;
    const auto kk = static_cast<std::int64_t>(k);
    for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = 0; j + 1 < k; ++j) {
            const auto m = static_cast<std::int64_t>(std::max(rho[i], rho[j]));
            sum += std::max<std::int64_t>(kk + 1 - m, 0);
        }
    const double kd = static_cast<double>(k);
    return 3.0 * static_cast<double>(sum) / (kd * kd * kd);
}

/// R(v_i) = sum_j (w_j / mean w) I(v_j > v_i).
inline std::vector<double> weighted_ranks(const std::vector<double>& v, const std::vector<double>& w) {
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    std::vector<double> r(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] > v[i]) r[i] += w[j] / mean;
    return r;
}

/// Multiplier-bootstrap eta by the literal tau(k) sum.
inline double bootstrap_eta(const std::vector<double>& x, const std::vector<double>& y, std::size_t k,
                            const std::vector<double>& w) {
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    const auto rx = weighted_ranks(x, w);
    const auto ry = weighted_ranks(y, w);
    const auto order = by_decreasing(y);
    const double kd = static_cast<double>(k);
    std::size_t tau = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        if (ry[order[i]] < kd) tau = i + 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < tau; ++i)
        for (std::size_t j = 0; j < tau; ++j) {
            const double ci = w[order[i]] / mean;
            const double cj = w[order[j]] / mean;
            sum += ci * cj * std::max(kd - std::max(rx[order[i]], rx[order[j]]), 0.0);
        }
    return 3.0 * sum / (kd * kd * kd);
}

/// Tail-copula slice straight from its definition:
/// (1/k) sum_{i <= k-1} I(rho_i < k u + 1).
inline double tail_copula_slice(const std::vector<std::size_t>& rho, std::size_t k, double u) {
    double count = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i)
        if (static_cast<double>(rho[i]) < static_cast<double>(k) * u + 1.0) count += 1.0;
    return count / static_cast<double>(k);
}

/// n distinct values in random order.
inline std::vector<double> distinct_values(std::size_t n, std::mt19937_64& gen) {
    std::vector<double> v(n);
    std::iota(v.begin(), v.end(), 0.0);
    std::shuffle(v.begin(), v.end(), gen);
    std::uniform_real_distribution<double> noise(0.0, 0.25);
    for (auto& e : v) e += noise(gen);
    return v;
}

} // namespace oracle
