#include "tailassoc/rng.hpp"

#include <cmath>
#include <numbers>

namespace tailassoc {

std::uint64_t Rng::below(std::uint64_t n) {
    // Lemire-style rejection to avoid modulo bias.
    const std::uint64_t limit = n == 0 ? 0 : (~std::uint64_t{0} - n + 1) % n;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= limit) return x % n;
    }
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gamma(double shape) {
    if (shape < 1.0) {
        // Boost to shape + 1 and scale back by U^(1/shape).
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace tailassoc
