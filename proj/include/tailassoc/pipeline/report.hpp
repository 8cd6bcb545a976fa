#pragma once

#include "tailassoc/pipeline/analysis.hpp"

#include <string>
#include <string_view>

namespace tailassoc {

/// Column list of the per-k CSV report.
inline constexpr std::string_view report_csv_header =
    "k,eta_xy,eta_yx,delta,p_eta_xy,p_eta_yx,p_delta,ci_delta_low,ci_delta_high,boot_sd_delta";

/// Rounds to 12 significant digits, the precision used in every report.
double round_report_number(double v);

/// One JSON document: config echo, provenance, ACF diagnostics, per-k arrays,
/// test results and verdicts. The thread count is not echoed, so output does
/// not depend on it.
std::string report_to_json(const PairReport& report);

/// One row per k. Test columns are empty when the corresponding test did not
/// run.
std::string report_to_csv(const PairReport& report);

/// Inverse of report_to_json up to the 12-digit rounding; re-emitting the
/// parsed report reproduces the input bytes. Throws UnparsableValue.
PairReport report_from_json(std::string_view text);

/// Writes the report to `path`, or to stdout when path is "-". Throws IoError.
void emit_report(const PairReport& report, OutputFormat format, const std::string& path);

std::string render_report(const PairReport& report, OutputFormat format);

} // namespace tailassoc
