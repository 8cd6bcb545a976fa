#include "cli.hpp"

#include "tailassoc/copula.hpp"
#include "tailassoc/error.hpp"
#include "tailassoc/pipeline/analysis.hpp"
#include "tailassoc/pipeline/report.hpp"
#include "tailassoc/pipeline/returns.hpp"
#include "tailassoc/pipeline/simulate.hpp"
#include "tailassoc/pipeline/table.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <optional>
#include <ostream>

namespace tailassoc::cli {

namespace {

void write_text(const std::string& body, const std::string& path, std::ostream& out) {
    if (path == "-") {
        out << body << std::flush;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    require(file.good(), ErrorKind::IoError, "cannot open '" + path + "' for writing");
    file << body;
    file.flush();
    require(file.good(), ErrorKind::IoError, "write error on '" + path + "'");
}

struct AnalyzeArgs {
    std::string input;
    std::string x_col;
    std::string y_col;
    std::string key_col;
    std::optional<std::size_t> k_min;
    std::optional<std::size_t> k_max;
    std::optional<std::size_t> k_step;
    std::size_t B = 100;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::string tail = "upper";
    std::string tie_policy = "reject";
    std::string format = "json";
    std::string out = "-";
    bool no_eta_gate = false;
    double rejection_fraction = 0.75;
    bool prices = false;
    bool no_tests = false;
    unsigned threads = 1;
    std::string multipliers = "exponential";
    std::size_t max_lag = 20;
};

struct SimulateArgs {
    std::string model;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string out = "-";
};

struct AcfArgs {
    std::string input;
    std::vector<std::string> columns;
    std::string key_col;
    std::size_t max_lag = 20;
    bool prices = false;
    std::string out = "-";
};

struct PopulationArgs {
    std::string model;
    double tol = 1e-10;
    std::string out = "-";
};

int analyze(const AnalyzeArgs& a, std::ostream& out) {
    AnalysisConfig config;
    config.k_min = a.k_min;
    config.k_max = a.k_max;
    config.k_step = a.k_step;
    config.B = a.B;
    config.alpha = a.alpha;
    config.seed = a.seed;
    config.tail = parse_tail(a.tail);
    if (a.tie_policy == "reject") {
        config.tie_policy = TiePolicy::Kind::Reject;
    } else if (a.tie_policy == "jitter") {
        config.tie_policy = TiePolicy::Kind::Jitter;
    } else {
        throw Error(ErrorKind::InvalidConfig, "tie policy must be 'reject' or 'jitter'");
    }
    config.format = parse_format(a.format);
    config.eta_gate = !a.no_eta_gate;
    config.rejection_fraction = a.rejection_fraction;
    config.prices = a.prices;
    config.run_tests = !a.no_tests;
    config.threads = a.threads;
    config.scheme = MultiplierScheme::parse(a.multipliers);
    config.acf_max_lag = a.max_lag;
    config.validate();

    std::vector<std::string> columns{a.x_col};
    if (a.y_col != a.x_col) columns.push_back(a.y_col);
    const auto table = load_csv(a.input, a.key_col, columns);
    const auto report = run_pair_analysis(table, a.x_col, a.y_col, config);
    write_text(render_report(report, config.format), a.out, out);
    return exit_ok;
}

int simulate(const SimulateArgs& a, std::ostream& out) {
    const auto model = parse_model(a.model);
    validate(model);
    write_text(simulate_csv(model, a.n, a.seed), a.out, out);
    return exit_ok;
}

int acf_command(const AcfArgs& a, std::ostream& out) {
    const auto table = load_csv(a.input, a.key_col, a.columns);
    nlohmann::ordered_json doc;
    doc["input"] = a.input;
    doc["transform"] = a.prices ? "log_returns" : "none";
    for (const auto& name : a.columns) {
        const auto raw = table.column(name);
        const auto series = a.prices ? log_returns(raw) : std::vector<double>(raw.begin(), raw.end());
        const auto r = acf(series, a.max_lag);
        std::vector<double> values;
        for (double v : r.values) values.push_back(round_report_number(v));
        doc["columns"][name] = {{"n", series.size()},
                                {"values", values},
                                {"band", round_report_number(r.band)},
                                {"exceeding_lags", r.exceeding_lags}};
    }
    write_text(doc.dump(2) + "\n", a.out, out);
    return exit_ok;
}

int population(const PopulationArgs& a, std::ostream& out) {
    const auto model = parse_model(a.model);
    validate(model);
    const auto best = population_values(model, a.tol);
    const auto quad = population_values_quadrature(model, a.tol);
    nlohmann::ordered_json doc;
    doc["model"] = describe(model);
    doc["eta_xy"] = best.eta_xy;
    doc["eta_yx"] = best.eta_yx;
    doc["delta"] = best.delta;
    doc["eta_method"] = to_string(best.eta_method);
    doc["delta_method"] = to_string(best.delta_method);
    doc["quadrature"] = {{"eta_xy", quad.eta_xy}, {"eta_yx", quad.eta_yx}, {"delta", quad.delta}};
    doc["tail_dependence_chi"] = tail_dependence_chi(model);
    doc["tolerance"] = a.tol;
    write_text(doc.dump(2) + "\n", a.out, out);
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tail association and asymmetry analysis"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Estimate eta/Delta over a k grid and run bootstrap tests");
    analyze_cmd->add_option("--input", an.input, "CSV file")->required();
    analyze_cmd->add_option("--x-col", an.x_col, "Column for X")->required();
    analyze_cmd->add_option("--y-col", an.y_col, "Column for Y")->required();
    analyze_cmd->add_option("--key-col", an.key_col, "Key column (default: first column)");
    analyze_cmd->add_option("--k-min", an.k_min);
    analyze_cmd->add_option("--k-max", an.k_max);
    analyze_cmd->add_option("--k-step", an.k_step);
    analyze_cmd->add_option("--B", an.B, "Bootstrap replicates");
    analyze_cmd->add_option("--alpha", an.alpha);
    analyze_cmd->add_option("--seed", an.seed);
    analyze_cmd->add_option("--tail", an.tail, "upper|lower");
    analyze_cmd->add_option("--tie-policy", an.tie_policy, "reject|jitter");
    analyze_cmd->add_option("--format", an.format, "json|csv");
    analyze_cmd->add_option("--out", an.out, "Output path, - for stdout");
    analyze_cmd->add_flag("--no-eta-gate", an.no_eta_gate, "Run the Delta test even when no eta test rejects");
    analyze_cmd->add_option("--rejection-fraction", an.rejection_fraction);
    analyze_cmd->add_flag("--prices", an.prices, "Columns hold prices; analyse log-returns");
    analyze_cmd->add_flag("--no-tests", an.no_tests, "Estimates only");
    analyze_cmd->add_option("--threads", an.threads);
    analyze_cmd->add_option("--multipliers", an.multipliers, "exponential|gamma:MU,TAU");
    analyze_cmd->add_option("--max-lag", an.max_lag, "ACF lags");

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Write a CSV sampled from a copula model");
    simulate_cmd->add_option("--model", sim.model, "nelsen:T | kg:A,B,D | max:M")->required();
    simulate_cmd->add_option("--n", sim.n)->required();
    simulate_cmd->add_option("--seed", sim.seed);
    simulate_cmd->add_option("--out", sim.out);

    AcfArgs ac;
    auto* acf_cmd = app.add_subcommand("acf", "Sample autocorrelations of CSV columns");
    acf_cmd->add_option("--input", ac.input)->required();
    acf_cmd->add_option("--col", ac.columns, "Column (repeatable)")->required();
    acf_cmd->add_option("--key-col", ac.key_col);
    acf_cmd->add_option("--max-lag", ac.max_lag);
    acf_cmd->add_flag("--prices", ac.prices);
    acf_cmd->add_option("--out", ac.out);

    PopulationArgs pop;
    auto* population_cmd = app.add_subcommand("population", "Population eta and Delta of a copula model");
    population_cmd->add_option("--model", pop.model)->required();
    population_cmd->add_option("--tol", pop.tol, "Absolute quadrature tolerance");
    population_cmd->add_option("--out", pop.out);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (*analyze_cmd) return analyze(an, out);
        if (*simulate_cmd) return simulate(sim, out);
        if (*acf_cmd) return acf_command(ac, out);
        return population(pop, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::QuadratureFailure ? exit_numerical_failure : exit_input_error;
    }
}

} // namespace tailassoc::cli
