#include "tailassoc/pipeline/returns.hpp"

#include "tailassoc/error.hpp"

#include <cmath>
#include <string>

namespace tailassoc {

std::string_view to_string(Tail t) noexcept { return t == Tail::Upper ? "upper" : "lower"; }

Tail parse_tail(std::string_view text) {
    if (text == "upper") return Tail::Upper;
    if (text == "lower") return Tail::Lower;
    throw Error(ErrorKind::InvalidConfig, "tail must be 'upper' or 'lower', got '" + std::string(text) + "'");
}

std::vector<double> log_returns(std::span<const double> prices) {
    require(prices.size() >= 2, ErrorKind::SeriesTooShort, "need at least two prices");
    for (std::size_t t = 0; t < prices.size(); ++t) {
        require(prices[t] > 0.0, ErrorKind::NonPositivePrice,
                "price at position " + std::to_string(t) + " is not positive");
    }
    std::vector<double> out(prices.size() - 1);
    for (std::size_t t = 0; t + 1 < prices.size(); ++t) out[t] = std::log(prices[t + 1] / prices[t]);
    return out;
}

std::vector<double> tail_view(std::span<const double> r, Tail tail) {
    std::vector<double> out(r.begin(), r.end());
    if (tail == Tail::Lower) {
        for (auto& v : out) v = -v;
    }
    return out;
}

AcfResult acf(std::span<const double> r, std::size_t max_lag) {
    require(max_lag >= 1 && r.size() > max_lag, ErrorKind::SeriesTooShort,
            "series of length " + std::to_string(r.size()) + " too short for lag " + std::to_string(max_lag));
    const double n = static_cast<double>(r.size());
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= n;
    double c0 = 0.0;
    for (double v : r) c0 += (v - mean) * (v - mean);

    AcfResult out;
    out.band = 1.96 / std::sqrt(n);
    out.values.assign(max_lag, 0.0);
    if (c0 == 0.0) return out;
    for (std::size_t h = 1; h <= max_lag; ++h) {
        double ch = 0.0;
        for (std::size_t t = 0; t + h < r.size(); ++t) ch += (r[t] - mean) * (r[t + h] - mean);
        out.values[h - 1] = ch / c0;
        if (std::abs(out.values[h - 1]) > out.band) out.exceeding_lags.push_back(h);
    }
    return out;
}

} // namespace tailassoc
