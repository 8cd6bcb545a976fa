#include "tailassoc/pipeline/report.hpp"

#include "tailassoc/error.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace tailassoc {

using nlohmann::ordered_json;

double round_report_number(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string_view tie_name(TiePolicy::Kind k) { return k == TiePolicy::Kind::Jitter ? "jitter" : "reject"; }

TiePolicy::Kind parse_tie(std::string_view s) {
    if (s == "jitter") return TiePolicy::Kind::Jitter;
    if (s == "reject") return TiePolicy::Kind::Reject;
    throw Error(ErrorKind::UnparsableValue, "unknown tie policy '" + std::string(s) + "'");
}

ordered_json numbers(const std::vector<double>& v) {
    auto out = ordered_json::array();
    for (double x : v) out.push_back(round_report_number(x));
    return out;
}

ordered_json optional_size(const std::optional<std::size_t>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json acf_json(const AcfResult& a) {
    return {{"values", numbers(a.values)}, {"band", round_report_number(a.band)}, {"exceeding_lags", a.exceeding_lags}};
}

ordered_json tests_json(const std::vector<TestResult>& results) {
    auto out = ordered_json::array();
    for (const auto& r : results) {
        out.push_back({{"k", r.k},
                       {"statistic", round_report_number(r.statistic)},
                       {"p_value", round_report_number(r.p_value)},
                       {"exceedances", r.exceedances},
                       {"boot_sd", round_report_number(r.boot_sd)},
                       {"ci_low", round_report_number(r.ci_low)},
                       {"ci_high", round_report_number(r.ci_high)}});
    }
    return out;
}

ordered_json verdict_json(const std::optional<SweepVerdict>& v) {
    if (!v) return nullptr;
    return {{"fraction_significant", round_report_number(v->fraction_significant)},
            {"rejection_fraction", round_report_number(v->rejection_fraction)},
            {"reject", v->reject}};
}

std::vector<TestResult> tests_from(const ordered_json& j, std::size_t B, double alpha) {
    std::vector<TestResult> out;
    for (const auto& e : j) {
        TestResult r;
        r.k = e.at("k").get<std::size_t>();
        r.statistic = e.at("statistic").get<double>();
        r.p_value = e.at("p_value").get<double>();
        r.exceedances = e.at("exceedances").get<std::size_t>();
        r.boot_sd = e.at("boot_sd").get<double>();
        r.ci_low = e.at("ci_low").get<double>();
        r.ci_high = e.at("ci_high").get<double>();
        r.B = B;
        r.alpha = alpha;
        out.push_back(r);
    }
    return out;
}

std::optional<SweepVerdict> verdict_from(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    SweepVerdict v;
    v.fraction_significant = j.at("fraction_significant").get<double>();
    v.rejection_fraction = j.at("rejection_fraction").get<double>();
    v.reject = j.at("reject").get<bool>();
    return v;
}

AcfResult acf_from(const ordered_json& j) {
    AcfResult a;
    a.values = j.at("values").get<std::vector<double>>();
    a.band = j.at("band").get<double>();
    a.exceeding_lags = j.at("exceeding_lags").get<std::vector<std::size_t>>();
    return a;
}

std::optional<std::size_t> size_from(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<std::size_t>();
}

DeltaTestStatus status_from(std::string_view s) {
    for (auto st : {DeltaTestStatus::Run, DeltaTestStatus::SkippedByEtaGate, DeltaTestStatus::Disabled}) {
        if (to_string(st) == s) return st;
    }
    throw Error(ErrorKind::UnparsableValue, "unknown delta test status '" + std::string(s) + "'");
}

} // namespace

std::string report_to_json(const PairReport& r) {
    const auto& c = r.config;
    ordered_json doc;
    doc["config"] = {{"k_min", optional_size(c.k_min)},
                     {"k_max", optional_size(c.k_max)},
                     {"k_step", optional_size(c.k_step)},
                     {"B", c.B},
                     {"alpha", round_report_number(c.alpha)},
                     {"seed", c.seed},
                     {"tail", to_string(c.tail)},
                     {"tie_policy", tie_name(c.tie_policy)},
                     {"rejection_fraction", round_report_number(c.rejection_fraction)},
                     {"format", to_string(c.format)},
                     {"eta_gate", c.eta_gate},
                     {"run_tests", c.run_tests},
                     {"prices", c.prices},
                     {"acf_max_lag", c.acf_max_lag},
                     {"multipliers", c.scheme.describe()}};
    doc["provenance"] = {{"input", r.input},
                         {"key_column", r.key_column},
                         {"x_column", r.x_column},
                         {"y_column", r.y_column},
                         {"n", r.n},
                         {"first_key", r.first_key},
                         {"last_key", r.last_key},
                         {"transform", c.prices ? "log_returns" : "none"},
                         {"tail", to_string(c.tail)},
                         {"tie_policy", tie_name(c.tie_policy)},
                         {"jittered", r.jittered}};
    doc["acf"] = {{"x", acf_json(r.acf_x)}, {"y", acf_json(r.acf_y)}};
    doc["kgrid"] = r.kgrid;
    doc["eta_xy"] = numbers(r.eta_xy);
    doc["eta_yx"] = numbers(r.eta_yx);
    doc["delta"] = numbers(r.delta);
    doc["tests"] = {{"eta_xy", {{"results", tests_json(r.eta_xy_tests)}, {"verdict", verdict_json(r.eta_xy_verdict)}}},
                    {"eta_yx", {{"results", tests_json(r.eta_yx_tests)}, {"verdict", verdict_json(r.eta_yx_verdict)}}},
                    {"delta",
                     {{"status", to_string(r.delta_status)},
                      {"results", tests_json(r.delta_tests)},
                      {"verdict", verdict_json(r.delta_verdict)}}}};
    return doc.dump(2) + "\n";
}

PairReport report_from_json(std::string_view text) {
    try {
        const auto doc = ordered_json::parse(text);
        PairReport r;
        const auto& c = doc.at("config");
        r.config.k_min = size_from(c.at("k_min"));
        r.config.k_max = size_from(c.at("k_max"));
        r.config.k_step = size_from(c.at("k_step"));
        r.config.B = c.at("B").get<std::size_t>();
        r.config.alpha = c.at("alpha").get<double>();
        r.config.seed = c.at("seed").get<std::uint64_t>();
        r.config.tail = parse_tail(c.at("tail").get<std::string>());
        r.config.tie_policy = parse_tie(c.at("tie_policy").get<std::string>());
        r.config.rejection_fraction = c.at("rejection_fraction").get<double>();
        r.config.format = parse_format(c.at("format").get<std::string>());
        r.config.eta_gate = c.at("eta_gate").get<bool>();
        r.config.run_tests = c.at("run_tests").get<bool>();
        r.config.prices = c.at("prices").get<bool>();
        r.config.acf_max_lag = c.at("acf_max_lag").get<std::size_t>();
        r.config.scheme = MultiplierScheme::parse(c.at("multipliers").get<std::string>());

        const auto& p = doc.at("provenance");
        r.input = p.at("input").get<std::string>();
        r.key_column = p.at("key_column").get<std::string>();
        r.x_column = p.at("x_column").get<std::string>();
        r.y_column = p.at("y_column").get<std::string>();
        r.n = p.at("n").get<std::size_t>();
        r.first_key = p.at("first_key").get<std::string>();
        r.last_key = p.at("last_key").get<std::string>();
        r.jittered = p.at("jittered").get<bool>();

        r.acf_x = acf_from(doc.at("acf").at("x"));
        r.acf_y = acf_from(doc.at("acf").at("y"));
        r.kgrid = doc.at("kgrid").get<std::vector<std::size_t>>();
        r.eta_xy = doc.at("eta_xy").get<std::vector<double>>();
        r.eta_yx = doc.at("eta_yx").get<std::vector<double>>();
        r.delta = doc.at("delta").get<std::vector<double>>();

        const auto& t = doc.at("tests");
        const auto B = r.config.B;
        const auto alpha = r.config.alpha;
        r.eta_xy_tests = tests_from(t.at("eta_xy").at("results"), B, alpha);
        r.eta_yx_tests = tests_from(t.at("eta_yx").at("results"), B, alpha);
        r.eta_xy_verdict = verdict_from(t.at("eta_xy").at("verdict"));
        r.eta_yx_verdict = verdict_from(t.at("eta_yx").at("verdict"));
        r.delta_status = status_from(t.at("delta").at("status").get<std::string>());
        r.delta_tests = tests_from(t.at("delta").at("results"), B, alpha);
        r.delta_verdict = verdict_from(t.at("delta").at("verdict"));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::UnparsableValue, std::string("malformed report: ") + e.what());
    } catch (const Error& e) {
        throw Error(ErrorKind::UnparsableValue, std::string("malformed report: ") + e.what());
    }
}

std::string report_to_csv(const PairReport& r) {
    std::string out(report_csv_header);
    out += '\n';
    const bool eta_tests = r.eta_xy_tests.size() == r.kgrid.size() && !r.kgrid.empty();
    const bool delta_tests = r.delta_tests.size() == r.kgrid.size() && !r.kgrid.empty();
    for (std::size_t i = 0; i < r.kgrid.size(); ++i) {
        out += std::to_string(r.kgrid[i]);
        for (double v : {r.eta_xy[i], r.eta_yx[i], r.delta[i]}) out += ',' + fmt(v);
        if (eta_tests) {
            out += ',' + fmt(r.eta_xy_tests[i].p_value) + ',' + fmt(r.eta_yx_tests[i].p_value);
        } else {
            out += ",,";
        }
        if (delta_tests) {
            const auto& d = r.delta_tests[i];
            out += ',' + fmt(d.p_value) + ',' + fmt(d.ci_low) + ',' + fmt(d.ci_high) + ',' + fmt(d.boot_sd);
        } else {
            out += ",,,,";
        }
        out += '\n';
    }
    return out;
}

std::string render_report(const PairReport& report, OutputFormat format) {
    return format == OutputFormat::Json ? report_to_json(report) : report_to_csv(report);
}

void emit_report(const PairReport& report, OutputFormat format, const std::string& path) {
    const auto body = render_report(report, format);
    if (path == "-") {
        std::cout << body << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorKind::IoError, "cannot open '" + path + "' for writing");
    out << body;
    out.flush();
    require(out.good(), ErrorKind::IoError, "write error on '" + path + "'");
}

} // namespace tailassoc
