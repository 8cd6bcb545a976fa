#include "tailassoc/pipeline/analysis.hpp"

#include "tailassoc/error.hpp"
#include "tailassoc/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace tailassoc {

OutputFormat parse_format(std::string_view text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    throw Error(ErrorKind::InvalidConfig, "format must be 'json' or 'csv', got '" + std::string(text) + "'");
}

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::Json ? "json" : "csv"; }

std::string_view to_string(DeltaTestStatus s) noexcept {
    switch (s) {
    case DeltaTestStatus::Run: return "run";
    case DeltaTestStatus::SkippedByEtaGate: return "skipped_by_eta_gate";
    case DeltaTestStatus::Disabled: return "disabled";
    }
    return "unknown";
}

void AnalysisConfig::validate() const {
    require(B >= 1, ErrorKind::InvalidB, "B must be >= 1");
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidConfig, "alpha must lie in (0, 1)");
    require(rejection_fraction > 0.0 && rejection_fraction <= 1.0, ErrorKind::InvalidConfig,
            "rejection fraction must lie in (0, 1]");
    require(!k_step || *k_step >= 1, ErrorKind::InvalidConfig, "k step must be >= 1");
    require(acf_max_lag >= 1, ErrorKind::InvalidConfig, "ACF lag must be >= 1");
}

std::vector<std::size_t> default_kgrid(std::size_t n) {
    std::vector<std::size_t> grid;
    if (n >= 2500) {
        for (std::size_t k = 100; k <= 500; k += 10) grid.push_back(k);
        return grid;
    }
    const auto lo = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n))));
    const auto hi = static_cast<std::size_t>(std::floor(0.20 * static_cast<double>(n)));
    require(hi >= lo, ErrorKind::KOutOfRange,
            "sample of size " + std::to_string(n) + " is too small for the default k grid");
    for (int i = 0; i <= 20; ++i) {
        const auto k = lo + static_cast<std::size_t>(std::llround(i * static_cast<double>(hi - lo) / 20.0));
        if (grid.empty() || k > grid.back()) grid.push_back(k);
    }
    return grid;
}

std::vector<std::size_t> build_kgrid(const AnalysisConfig& config, std::size_t n) {
    if (!config.k_min && !config.k_max && !config.k_step) {
        auto grid = default_kgrid(n);
        require(grid.back() + 1 <= n, ErrorKind::KOutOfRange, "default k grid exceeds n - 1");
        return grid;
    }
    std::size_t lo = 0;
    std::size_t hi = 0;
    if (config.k_min && config.k_max) {
        lo = *config.k_min;
        hi = *config.k_max;
    } else {
        const auto fallback = default_kgrid(n);
        lo = config.k_min.value_or(fallback.front());
        hi = config.k_max.value_or(fallback.back());
    }
    const std::size_t step = config.k_step.value_or(n >= 2500 ? 10 : std::max<std::size_t>(1, (hi - lo) / 20));
    require(lo >= 2, ErrorKind::KOutOfRange, "k min must be >= 2");
    require(hi >= lo, ErrorKind::InvalidConfig, "k max must be >= k min");
    require(hi + 1 <= n, ErrorKind::KOutOfRange,
            "k max = " + std::to_string(hi) + " exceeds n - 1 = " + std::to_string(n - 1));
    std::vector<std::size_t> grid;
    for (std::size_t k = lo; k <= hi; k += step) grid.push_back(k);
    return grid;
}

namespace {

std::vector<double> prepare(std::span<const double> raw, const AnalysisConfig& config) {
    std::vector<double> series = config.prices ? log_returns(raw) : std::vector<double>(raw.begin(), raw.end());
    return tail_view(series, config.tail);
}

} // namespace

PairReport run_pair_analysis(const SeriesTable& table, const std::string& col_x, const std::string& col_y,
                             const AnalysisConfig& config) {
    config.validate();
    auto x = prepare(table.column(col_x), config);
    auto y = prepare(table.column(col_y), config);

    PairReport report;
    report.config = config;
    report.input = table.provenance;
    report.x_column = col_x;
    report.y_column = col_y;
    report.key_column = table.key_column;
    if (!table.keys.empty()) {
        report.first_key = table.keys.front();
        report.last_key = table.keys.back();
    }

    report.acf_x = acf(x, std::min(config.acf_max_lag, x.size() - 1));
    report.acf_y = acf(y, std::min(config.acf_max_lag, y.size() - 1));

    const TiePolicy policy =
        config.tie_policy == TiePolicy::Kind::Jitter ? TiePolicy::jitter(config.seed) : TiePolicy::reject();
    const auto s = make_sample(std::move(x), std::move(y), policy);
    report.n = s.size();
    report.jittered = s.jittered();

    report.kgrid = build_kgrid(config, s.size());
    for (const auto& d : delta_sweep(s, report.kgrid)) {
        report.eta_xy.push_back(d.eta_xy.value);
        report.eta_yx.push_back(d.eta_yx.value);
        report.delta.push_back(d.value);
    }

    if (!config.run_tests) {
        report.delta_status = DeltaTestStatus::Disabled;
        return report;
    }

    BootstrapOptions options;
    options.B = config.B;
    options.scheme = config.scheme;
    options.seed = config.seed;
    options.alpha = config.alpha;
    options.threads = config.threads;

    report.eta_xy_tests = test_eta_zero(s, report.kgrid, options, Direction::XGivenY);
    report.eta_yx_tests = test_eta_zero(s, report.kgrid, options, Direction::YGivenX);
    report.eta_xy_verdict = summarize(report.eta_xy_tests, config.rejection_fraction);
    report.eta_yx_verdict = summarize(report.eta_yx_tests, config.rejection_fraction);

    const bool association = report.eta_xy_verdict->reject || report.eta_yx_verdict->reject;
    if (config.eta_gate && !association) {
        report.delta_status = DeltaTestStatus::SkippedByEtaGate;
        return report;
    }
    report.delta_status = DeltaTestStatus::Run;
    report.delta_tests = test_delta_zero(s, report.kgrid, options);
    report.delta_verdict = summarize(report.delta_tests, config.rejection_fraction);
    return report;
}

} // namespace tailassoc
