#include "tailassoc/bootstrap.hpp"

#include "tailassoc/error.hpp"
#include "tailassoc/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

namespace tailassoc {

MultiplierScheme MultiplierScheme::gamma(double mu, double tau) {
    require(mu > 0.0 && tau > 0.0 && std::isfinite(mu) && std::isfinite(tau), ErrorKind::DomainError,
            "multiplier mean and standard deviation must be positive");
    return {Distribution::Gamma, mu, tau};
}

MultiplierScheme MultiplierScheme::parse(const std::string& text) {
    if (text == "exponential" || text == "unit-exponential") return unit_exponential();
    const std::string prefix = "gamma:";
    require(text.rfind(prefix, 0) == 0, ErrorKind::InvalidConfig,
            "multiplier scheme must be 'exponential' or 'gamma:MU,TAU', got '" + text + "'");
    const auto body = text.substr(prefix.size());
    const auto comma = body.find(',');
    require(comma != std::string::npos, ErrorKind::InvalidConfig, "gamma scheme needs MU,TAU");
    auto number = [](const std::string& t) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        require(ec == std::errc() && ptr == t.data() + t.size() && !t.empty(), ErrorKind::InvalidConfig,
                "cannot parse number '" + t + "'");
        return v;
    };
    return gamma(number(body.substr(0, comma)), number(body.substr(comma + 1)));
}

std::string MultiplierScheme::describe() const {
    if (distribution == Distribution::UnitExponential) return "exponential";
    std::ostringstream os;
    os.precision(17);
    os << "gamma:" << mu << ',' << tau;
    return os.str();
}

std::vector<double> draw_multipliers(const MultiplierScheme& scheme, std::size_t n, std::uint64_t seed,
                                     std::uint64_t stream) {
    Rng rng(seed, stream);
    std::vector<double> out(n);
    if (scheme.distribution == MultiplierScheme::Distribution::UnitExponential) {
        for (auto& w : out) w = rng.exponential();
        return out;
    }
    const double shape = (scheme.mu / scheme.tau) * (scheme.mu / scheme.tau);
    const double scale = scheme.tau * scheme.tau / scheme.mu;
    for (auto& w : out) {
        // Shapes below one can underflow to exactly zero; multipliers must stay positive.
        do {
            w = scale * rng.gamma(shape);
        } while (!(w > 0.0));
    }
    return out;
}

std::vector<double> weighted_reverse_rank(std::span<const double> v, std::span<const double> weights) {
    require(v.size() == weights.size(), ErrorKind::LengthMismatch, "values and weights differ in length");
    require(!v.empty(), ErrorKind::LengthMismatch, "empty series");
    double total = 0.0;
    for (double w : weights) {
        require(w > 0.0 && std::isfinite(w), ErrorKind::DomainError, "weights must be positive and finite");
        total += w;
    }
    const double mean = total / static_cast<double>(v.size());
    const auto order = descending_order(v);
    std::vector<double> out(v.size());
    double above = 0.0;
    for (std::size_t p = 0; p < order.size(); ++p) {
        if (p > 0) {
            require(v[order[p]] != v[order[p - 1]], ErrorKind::TiesPresent, "duplicate value in ranked series");
        }
        out[order[p]] = above;
        above += weights[order[p]] / mean;
    }
    return out;
}

namespace {

/// Precomputes both descending orders of a sample once; each call to load()
/// then costs O(n) and each eta evaluation O(#{R < k}).
class WeightedRankEngine {
public:
    explicit WeightedRankEngine(const PairedSample& s)
        : n_(s.size()), x_order_(descending_order(s.x())), y_order_(descending_order(s.y())),
          x_pos_(n_), y_pos_(n_), c_(n_), rx_(n_), ry_(n_) {
        for (std::size_t p = 0; p < n_; ++p) {
            x_pos_[x_order_[p]] = p;
            y_pos_[y_order_[p]] = p;
        }
    }

    void load(std::span<const double> weights) {
        require(weights.size() == n_, ErrorKind::LengthMismatch, "one multiplier per observation required");
        double total = 0.0;
        for (double w : weights) {
            require(w > 0.0 && std::isfinite(w), ErrorKind::DomainError, "weights must be positive and finite");
            total += w;
        }
        const double mean = total / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) c_[i] = weights[i] / mean;
        double above = 0.0;
        for (std::size_t p = 0; p < n_; ++p) {
            rx_[p] = above;
            above += c_[x_order_[p]];
        }
        above = 0.0;
        for (std::size_t p = 0; p < n_; ++p) {
            ry_[p] = above;
            above += c_[y_order_[p]];
        }
    }

    double eta(std::size_t k, Direction d) const {
        return d == Direction::XGivenY ? eta_impl(k, x_order_, rx_, y_pos_, ry_)
                                       : eta_impl(k, y_order_, ry_, x_pos_, rx_);
    }

private:
    // `ranked_*` is the series whose weighted ranks enter the positive part;
    // the conditioning series only decides membership in the top tau(k).
    double eta_impl(std::size_t k, const std::vector<std::size_t>& ranked_order, const std::vector<double>& ranked_r,
                    const std::vector<std::size_t>& cond_pos, const std::vector<double>& cond_r) const {
        const double kk = static_cast<double>(k);
        // R along the conditioning order is nondecreasing, so {i : R < k} is a prefix.
        const auto tau = static_cast<std::size_t>(
            std::partition_point(cond_r.begin(), cond_r.end(), [&](double r) { return r < kk; }) - cond_r.begin());
        double sum = 0.0;
        double below = 0.0;
        for (std::size_t p = 0; p < n_ && ranked_r[p] < kk; ++p) {
            const std::size_t idx = ranked_order[p];
            if (cond_pos[idx] >= tau) continue;
            const double c = c_[idx];
            sum += c * (kk - ranked_r[p]) * (2.0 * below + c);
            below += c;
        }
        return 3.0 * sum / (kk * kk * kk);
    }

    std::size_t n_;
    std::vector<std::size_t> x_order_;
    std::vector<std::size_t> y_order_;
    std::vector<std::size_t> x_pos_;
    std::vector<std::size_t> y_pos_;
    std::vector<double> c_;
    std::vector<double> rx_;
    std::vector<double> ry_;
};

void check_k(std::size_t k, std::size_t n) {
    require(k >= 2 && k <= n, ErrorKind::KOutOfRange,
            "k = " + std::to_string(k) + " must lie in [2, " + std::to_string(n) + "]");
}

enum class Statistic { EtaXY, EtaYX, Delta };

double evaluate(const WeightedRankEngine& engine, std::size_t k, Statistic stat) {
    switch (stat) {
    case Statistic::EtaXY: return engine.eta(k, Direction::XGivenY);
    case Statistic::EtaYX: return engine.eta(k, Direction::YGivenX);
    case Statistic::Delta: return engine.eta(k, Direction::XGivenY) - engine.eta(k, Direction::YGivenX);
    }
    return 0.0;
}

/// replicate_values[b * K + j]: statistic of replicate b at kgrid[j].
std::vector<double> run_replicates(const PairedSample& s, std::span<const std::size_t> kgrid,
                                   const BootstrapOptions& options, Statistic stat) {
    const std::size_t K = kgrid.size();
    std::vector<double> values(options.B * K);
    const WeightedRankEngine prototype(s);

    auto work = [&](std::size_t first, std::size_t last) {
        WeightedRankEngine engine = prototype;
        for (std::size_t b = first; b < last; ++b) {
            const auto weights = draw_multipliers(options.scheme, s.size(), options.seed, b);
            engine.load(weights);
            for (std::size_t j = 0; j < K; ++j) values[b * K + j] = evaluate(engine, kgrid[j], stat);
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, options.B);
    if (threads == 1) {
        work(0, options.B);
        return values;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (options.B + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t first = t * chunk;
        const std::size_t last = std::min(options.B, first + chunk);
        if (first < last) pool.emplace_back(work, first, last);
    }
    pool.clear();
    return values;
}

void validate_options(const BootstrapOptions& options) {
    require(options.B >= 1, ErrorKind::InvalidB, "number of bootstrap replicates must be >= 1");
    require(options.alpha > 0.0 && options.alpha < 1.0, ErrorKind::InvalidConfig, "alpha must lie in (0, 1)");
}

std::vector<TestResult> aggregate(std::span<const std::size_t> kgrid, std::span<const double> statistics,
                                  const std::vector<double>& values, const BootstrapOptions& options,
                                  bool two_sided) {
    const std::size_t K = kgrid.size();
    const std::size_t B = options.B;
    const double z = normal_quantile(options.alpha / 2.0);
    std::vector<TestResult> out(K);
    for (std::size_t j = 0; j < K; ++j) {
        const double stat = statistics[j];
        std::size_t count = 0;
        double mean = 0.0;
        for (std::size_t b = 0; b < B; ++b) {
            const double rep = values[b * K + j];
            const bool exceed = two_sided ? std::abs(rep - stat) > std::abs(stat) : rep - stat > stat;
            if (exceed) ++count;
            mean += rep;
        }
        mean /= static_cast<double>(B);
        double ss = 0.0;
        for (std::size_t b = 0; b < B; ++b) {
            const double d = values[b * K + j] - mean;
            ss += d * d;
        }
        // A single replicate carries no spread information.
        const double sd = B > 1 ? std::sqrt(ss / static_cast<double>(B - 1)) : 0.0;
        const double half = z * sd / std::sqrt(static_cast<double>(kgrid[j]));

        auto& r = out[j];
        r.k = kgrid[j];
        r.statistic = stat;
        r.exceedances = count;
        r.p_value = static_cast<double>(count) / static_cast<double>(B);
        r.boot_sd = sd;
        r.ci_low = stat - half;
        r.ci_high = stat + half;
        r.B = B;
        r.alpha = options.alpha;
    }
    return out;
}

} // namespace

double bootstrap_eta(const PairedSample& s, std::size_t k, std::span<const double> weights, Direction direction) {
    check_k(k, s.size());
    WeightedRankEngine engine(s);
    engine.load(weights);
    return engine.eta(k, direction);
}

double bootstrap_delta(const PairedSample& s, std::size_t k, std::span<const double> weights) {
    check_k(k, s.size());
    WeightedRankEngine engine(s);
    engine.load(weights);
    return engine.eta(k, Direction::XGivenY) - engine.eta(k, Direction::YGivenX);
}

std::vector<TestResult> test_eta_zero(const PairedSample& s, std::span<const std::size_t> kgrid,
                                      const BootstrapOptions& options, Direction direction) {
    validate_options(options);
    const auto plain = eta_sweep(s, kgrid, direction);
    std::vector<double> stats;
    for (const auto& e : plain) stats.push_back(e.value);
    const auto values =
        run_replicates(s, kgrid, options, direction == Direction::XGivenY ? Statistic::EtaXY : Statistic::EtaYX);
    return aggregate(kgrid, stats, values, options, false);
}

std::vector<TestResult> test_delta_zero(const PairedSample& s, std::span<const std::size_t> kgrid,
                                        const BootstrapOptions& options) {
    validate_options(options);
    const auto plain = delta_sweep(s, kgrid);
    std::vector<double> stats;
    for (const auto& d : plain) stats.push_back(d.value);
    const auto values = run_replicates(s, kgrid, options, Statistic::Delta);
    return aggregate(kgrid, stats, values, options, true);
}

SweepVerdict summarize(std::span<const TestResult> results, double rejection_fraction) {
    require(rejection_fraction > 0.0 && rejection_fraction <= 1.0, ErrorKind::InvalidConfig,
            "rejection fraction must lie in (0, 1]");
    SweepVerdict v;
    v.rejection_fraction = rejection_fraction;
    if (results.empty()) return v;
    std::size_t significant = 0;
    for (const auto& r : results) {
        if (r.p_value < r.alpha) ++significant;
    }
    v.fraction_significant = static_cast<double>(significant) / static_cast<double>(results.size());
    v.reject = v.fraction_significant >= rejection_fraction;
    return v;
}

double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, ErrorKind::DomainError, "probability must lie in (0, 1)");
    // Wichura's AS241 (PPND16) for the lower quantile of 1 - p.
    const double q = 0.5 - p;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            ((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r + 6.7265770927008700853e+4) * r +
                4.5921953931549871457e+4) * r + 1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0;
        const double den =
            ((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r + 3.9307895800092710610e+4) * r +
                2.1213794301586595867e+4) * r + 5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0;
        return q * num / den;
    }
    double r = std::sqrt(-std::log(std::min(p, 1.0 - p)));
    double value = 0.0;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            ((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r + 2.41780725177450611770e-1) * r +
                1.27045825245236838258e+0) * r + 3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
             4.63033784615654529590e+0) * r + 1.42343711074968357734e+0;
        const double den =
            ((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r + 1.51986665636164571966e-2) * r +
                1.48103976427480074590e-1) * r + 6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
             2.05319162663775882187e+0) * r + 1.0;
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            ((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 1.24266094738807843860e-3) * r +
                2.65321895265761230930e-2) * r + 2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
             5.46378491116411436990e+0) * r + 6.65790464350110377720e+0;
        const double den =
            ((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r + 1.84631831751005468180e-5) * r +
                7.86869131145613259100e-4) * r + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
             5.99832206555887937690e-1) * r + 1.0;
        value = num / den;
    }
    return q < 0.0 ? -value : value;
}

} // namespace tailassoc
