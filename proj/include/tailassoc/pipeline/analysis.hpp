#pragma once

#include "tailassoc/bootstrap.hpp"
#include "tailassoc/pipeline/returns.hpp"
#include "tailassoc/pipeline/table.hpp"
#include "tailassoc/ranks.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tailassoc {

enum class OutputFormat { Json, Csv };
OutputFormat parse_format(std::string_view text);
std::string_view to_string(OutputFormat f) noexcept;

struct AnalysisConfig {
    /// Unset bounds fall back to default_kgrid.
    std::optional<std::size_t> k_min;
    std::optional<std::size_t> k_max;
    std::optional<std::size_t> k_step;
    std::size_t B = 100;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    Tail tail = Tail::Upper;
    TiePolicy::Kind tie_policy = TiePolicy::Kind::Reject;
    double rejection_fraction = 0.75;
    OutputFormat format = OutputFormat::Json;
    /// Run the Delta test only when an eta test rejects.
    bool eta_gate = true;
    bool run_tests = true;
    /// Input columns are prices; analyse their log-returns.
    bool prices = false;
    std::size_t acf_max_lag = 20;
    MultiplierScheme scheme;
    unsigned threads = 1;

    /// Throws InvalidConfig / InvalidB on out-of-range fields.
    void validate() const;
};

/// {100, 110, ..., 500} when n >= 2500; otherwise ceil(0.05 n) .. floor(0.20 n)
/// in 20 even steps.
std::vector<std::size_t> default_kgrid(std::size_t n);

/// Grid requested by `config` for a sample of size n. Never clamps: any k
/// above n - 1 is a KOutOfRange error.
std::vector<std::size_t> build_kgrid(const AnalysisConfig& config, std::size_t n);

enum class DeltaTestStatus { Run, SkippedByEtaGate, Disabled };
std::string_view to_string(DeltaTestStatus s) noexcept;

struct PairReport {
    AnalysisConfig config;
    // Provenance.
    std::string input;
    std::string x_column;
    std::string y_column;
    std::string key_column;
    std::size_t n = 0;
    bool jittered = false;
    std::string first_key;
    std::string last_key;

    AcfResult acf_x;
    AcfResult acf_y;

    std::vector<std::size_t> kgrid;
    std::vector<double> eta_xy;
    std::vector<double> eta_yx;
    std::vector<double> delta;

    // Empty when tests are disabled.
    std::vector<TestResult> eta_xy_tests;
    std::vector<TestResult> eta_yx_tests;
    std::optional<SweepVerdict> eta_xy_verdict;
    std::optional<SweepVerdict> eta_yx_verdict;

    DeltaTestStatus delta_status = DeltaTestStatus::Disabled;
    std::vector<TestResult> delta_tests;
    std::optional<SweepVerdict> delta_verdict;
};

PairReport run_pair_analysis(const SeriesTable& table, const std::string& col_x, const std::string& col_y,
                             const AnalysisConfig& config);

} // namespace tailassoc
