#include "tailassoc/quadrature.hpp"

#include "tailassoc/error.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

namespace tailassoc {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    // Error estimates never drop below the rounding level of the panel value.
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod * half);
    return {a, b, kronrod * half, std::max(std::abs((kronrod - gauss) * half), roundoff)};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> points, double abs_tol,
                                    std::size_t max_intervals) {
    require(points.size() >= 2, ErrorKind::DomainError, "need integration limits");
    require(abs_tol > 0.0, ErrorKind::DomainError, "tolerance must be positive");

    std::priority_queue<Piece> heap;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        require(points[i] < points[i + 1], ErrorKind::DomainError, "breakpoints must increase");
        Piece p = kronrod15(f, points[i], points[i + 1]);
        total += p.value;
        error += p.error;
        heap.push(p);
    }

    while (error > abs_tol) {
        if (heap.size() >= max_intervals) {
            throw Error(ErrorKind::QuadratureFailure,
                        "error estimate " + std::to_string(error) + " above tolerance after " +
                            std::to_string(heap.size()) + " intervals");
        }
        const Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Piece left = kronrod15(f, worst.a, mid);
        const Piece right = kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the pieces to shed the drift of the running updates.
    QuadratureResult out;
    out.intervals = heap.size();
    while (!heap.empty()) {
        out.value += heap.top().value;
        out.abs_error += heap.top().error;
        heap.pop();
    }
    return out;
}

} // namespace tailassoc
