#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace tailassoc {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration.
///
/// `points` lists the integration limits together with any known interior
/// kinks, in increasing order (at least two entries). Each initial piece is
/// integrated separately, then the piece with the largest error estimate is
/// bisected until the summed estimate drops below `abs_tol`. Throws
/// QuadratureFailure when `max_intervals` is exhausted first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> points, double abs_tol,
                                    std::size_t max_intervals = 2000);

} // namespace tailassoc
