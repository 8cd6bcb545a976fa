#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace tailassoc {

enum class Tail { Upper, Lower };

std::string_view to_string(Tail t) noexcept;
/// "upper" or "lower"; throws InvalidConfig otherwise.
Tail parse_tail(std::string_view text);

/// log(p[t+1] / p[t]); throws NonPositivePrice, SeriesTooShort.
std::vector<double> log_returns(std::span<const double> prices);

/// Upper tail: unchanged. Lower tail: negated, so lower-tail extremes become
/// upper-tail extremes for the estimators.
std::vector<double> tail_view(std::span<const double> r, Tail tail);

struct AcfResult {
    /// values[h-1]: autocorrelation at lag h = 1..max_lag.
    std::vector<double> values;
    /// Half-width of the white-noise band, 1.96 / sqrt(n).
    double band = 0.0;
    /// Lags whose |acf| exceeds the band.
    std::vector<std::size_t> exceeding_lags;
};

/// Mean-centred, divide-by-n sample autocorrelation. Requires
/// size > max_lag >= 1 (SeriesTooShort otherwise). A constant series has no
/// defined autocorrelation and is reported as all zeros.
AcfResult acf(std::span<const double> r, std::size_t max_lag);

} // namespace tailassoc
